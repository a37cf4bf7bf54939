#include "support.hpp"

#include <Eigen/Dense>

namespace testing {

namespace oracle {

double min_eigenvalue(const SymMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n == 0) return 0;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double max_abs_entry(const SymMatrix& m) {
  double out = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out = std::max(out, std::abs(m(i, j).get_d()));
  return out;
}

}  // namespace oracle

std::vector<std::pair<std::string, Operator>> constructive_corpus() {
  std::vector<std::pair<std::string, Operator>> out;
  for (const char* text : {
           "diff(0)",
           "mul(x0 + 2)",
           "mul(x0^2)",
           "mul(1 - x0^2)",
           "endo(x0/2)",
           "endo(-x0)",
           "endo(x0^2)",
           "rank{(x0 + 2; lebesgue([-1,1])), (-x0^2; lebesgue([0,1]))}",
           "rank{(x0 + 2; lebesgue([-1,0])), (x0 + 2 - x0^2; lebesgue([0,1]))}",
           "rank{(x0^2; dirac(1/2)), (1; dirac(-1))}",
           "rank{(1; lebesgue([-1,1]; density=x0^2))}",
           "sum(mul(x0^2), endo(x0/2))",
           "compose(endo(x0/2), mul(x0 + 2))",
           "compose(mul(x0 + 2), endo(-x0))",
           "scale(2; endo(x0/2))",
           "compose(rank{(x0 + 2; lebesgue([-1,1]))}, endo(x0/2))",
       })
    out.emplace_back(text, parse_operator(text));
  return out;
}

std::vector<std::pair<std::string, Operator>> preserver_corpus() {
  std::vector<std::pair<std::string, Operator>> out;
  for (const char* text : {
           "diff(0)",
           "mul(x0 + 2)",
           "mul(x0^2)",
           "mul(1 - x0^2)",
           "endo(x0/2)",
           "endo(-x0)",
           "endo(x0^2)",
           "rank{(x0 + 2; lebesgue([-1,0])), (x0 + 2 - x0^2; lebesgue([0,1]))}",
           "rank{(x0^2; dirac(1/2)), (1; dirac(-1))}",
           "sum(mul(x0^2), endo(x0/2))",
           "compose(endo(x0/2), mul(x0 + 2))",
           "scale(2; endo(x0/2))",
       })
    out.emplace_back(text, parse_operator(text));
  return out;
}

}  // namespace testing
