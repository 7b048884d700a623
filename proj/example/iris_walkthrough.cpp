// Walk through the main analyses on the Iris measurements.
//
//   iris_walkthrough [path/to/iris.csv]

#include <iostream>
#include <string>

#include "multiskew/multiskew.hpp"

namespace ms = multiskew;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : std::string(MULTISKEW_DATA_DIR) + "/iris.csv";
  try {
    const auto iris = ms::load_csv(path, ms::parse_column_list("1-4"));
    std::cout << "Loaded " << iris.rows() << " rows, " << iris.cols() << " variables\n\n";

    for (const auto& report : {ms::fisher_report(iris), ms::mardia_skewness(iris), ms::partial_skewness(iris),
                               ms::directional_skewness(iris, 50)})
      std::cout << ms::to_key_value(report, 6) << '\n';

    std::cout << "Standardized third moment (16 x 4):\n";
    ms::write_matrix_rows(std::cout, ms::third_moment(iris, ms::MomentKind::standardized).values(), 4);

    const auto most = ms::max_skew(iris, 50, 2);
    std::cout << "\nMost skewed directions:\n" << most.directions << "\nskewness: " << most.skewness.transpose()
              << '\n';

    const auto least = ms::min_skew(iris, 2);
    std::cout << "\nLeast skewed 2-d projection, Mardia skewness of scores: "
              << ms::residual_skewness(least, iris).scalar() << '\n';

    const auto boot = ms::skew_boot(iris, 200, iris.rows(), ms::Measure::mardia, 1);
    std::cout << "Bootstrap (200 replicates): observed " << boot.observed << ", p-value " << boot.pvalue << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
