#pragma once

#include "multiskew/bootstrap.hpp"
#include "multiskew/chi2.hpp"
#include "multiskew/errors.hpp"
#include "multiskew/ingest.hpp"
#include "multiskew/measures.hpp"
#include "multiskew/moments.hpp"
#include "multiskew/projpursuit.hpp"
#include "multiskew/symmetrize.hpp"
