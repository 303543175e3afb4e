#include "hochmod/report.hpp"

namespace hochmod {

std::string Report::summary() const {
  std::string out = name + ": " + (ok() ? "ok" : "FAILED") + " (" + std::to_string(checks) + " checks";
  if (!ok()) out += ", " + std::to_string(total_violations) + " violations";
  out += ")";
  for (const auto& v : violations) {
    out += "\n  " + v.check + " at (";
    for (std::size_t i = 0; i < v.basis.size(); ++i) out += (i ? "," : "") + std::to_string(v.basis[i]);
    out += ")";
    if (!v.lhs.empty() || !v.rhs.empty()) out += ": " + v.lhs + " != " + v.rhs;
  }
  return out;
}

}  // namespace hochmod
