#include "kdvlab/params.hpp"

#include <sstream>

#include "kdvlab/error.hpp"

namespace kdvlab {

RegularityParams RegularityParams::make(double s, double delta, std::optional<double> gamma,
                                        double eps_tail) {
  RegularityParams p;
  p.s = s;
  p.delta = delta;
  p.gamma = gamma.value_or(1.0 - 10.0 * delta);
  p.eps_tail = eps_tail;
  return p;
}

std::optional<std::string> RegularityParams::violation() const {
  std::ostringstream os;
  if (!(s >= 0.0 && s < 0.5)) {
    os << "constraint 0 <= s < 1/2 violated (s = " << s << ")";
  } else if (!(delta > 0.0)) {
    os << "constraint delta > 0 violated (delta = " << delta << ")";
  } else if (!(10.0 * delta < 1.0 - 2.0 * s)) {
    os << "constraint 10*delta < 1-2s violated (10*delta = " << 10.0 * delta
       << " >= 1-2s = " << 1.0 - 2.0 * s << ")";
  } else if (!(gamma > 0.0)) {
    os << "constraint gamma > 0 violated (gamma = " << gamma << ")";
  } else if (!(gamma <= 1.0 - 10.0 * delta + 1e-12)) {
    os << "constraint gamma <= 1-10*delta violated (gamma = " << gamma
       << " > " << 1.0 - 10.0 * delta << ")";
  } else if (!(eps_tail > 0.0)) {
    os << "constraint eps_tail > 0 violated (eps_tail = " << eps_tail << ")";
  } else {
    return std::nullopt;
  }
  return os.str();
}

void RegularityParams::validate() const {
  if (auto v = violation()) throw ConfigError(*v);
}

}  // namespace kdvlab
