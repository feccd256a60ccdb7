#include "qmatrix/report.hpp"

#include <algorithm>

namespace qmatrix {

CheckRecord residual_check(std::string name, std::string tag, const TensorOperator& residual, std::string detail) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.tag = std::move(tag);
  rec.detail = std::move(detail);
  rec.residual_nonzeros = residual.nonzeros();
  rec.passed = rec.residual_nonzeros == 0;
  rec.max_degree = residual.max_degree_span();
  bool numeric = false;
  mpq_class max_abs = 0;
  for (std::size_t r = 0; r < residual.dim(); ++r) {
    for (const auto& [c, v] : residual.row(r)) {
      if (!v.is_exact()) {
        numeric = true;
        max_abs = std::max<mpq_class>(max_abs, abs(v.numeric_value()));
      }
    }
  }
  if (numeric) rec.residual_max_abs = max_abs.get_str();
  if (!rec.passed) {
    rec.witness = first_nonzero(residual);
    rec.residual = residual;
  }
  return rec;
}

CheckRecord relation_check(std::string name, std::string tag, const TensorOperator& lhs, const TensorOperator& rhs,
                           std::string detail) {
  CheckRecord rec = residual_check(std::move(name), std::move(tag), lhs - rhs, std::move(detail));
  rec.max_degree = std::max({rec.max_degree, lhs.max_degree_span(), rhs.max_degree_span()});
  return rec;
}

CheckRecord condition_check(std::string name, std::string tag, bool passed, std::string detail) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.tag = std::move(tag);
  rec.passed = passed;
  rec.detail = std::move(detail);
  return rec;
}

bool all_passed(const std::vector<CheckRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed; });
}

}  // namespace qmatrix
