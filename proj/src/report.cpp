#include "qsurg/report.hpp"

#include <sstream>

namespace qsurg {

Report::Section& Report::section(const std::string& name) {
  for (auto& s : sections)
    if (s.name == name) return s;
  sections.push_back({name, {}});
  return sections.back();
}

std::string Report::text() const {
  std::ostringstream os;
  os << "# " << title << "\n";
  for (const auto& [k, v] : header) os << k << " = " << v << "\n";
  for (const auto& s : sections) {
    os << "[" << s.name << "]\n";
    for (const auto& l : s.lines) os << l << "\n";
  }
  return os.str();
}

std::string check_line(const CheckResult& c) {
  std::ostringstream os;
  os << c.name << " : " << (c.pass ? "pass" : "FAIL");
  if (!c.pass) {
    os << " residual=" << c.residual.str();
    if (!c.witness.empty()) os << " witness=" << c.witness;
  }
  return os.str();
}

std::string value_line(const std::string& key, const Cyc& v, bool approx) {
  std::ostringstream os;
  os << key << " = " << v.str();
  if (approx) {
    auto z = v.approx();
    os << "  ~ (" << z.real() << ", " << z.imag() << ")";
  }
  return os.str();
}

}  // namespace qsurg
