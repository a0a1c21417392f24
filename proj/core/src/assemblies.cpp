#include "mca/assemblies.hpp"

#include <stdexcept>

namespace mca {

Code selector_tracker(const std::vector<std::size_t>& f) {
  if (f.size() > 5) throw std::invalid_argument("selector trackers handle sets of at most 5 elements");
  Expr body = Expr::var(0);
  for (std::size_t x = 0; x < 5; ++x) body = Expr::app(body, Expr::lit(selector(x < f.size() ? f[x] : 0)));
  return Code::closure(0, body);
}

std::vector<std::size_t> compose_maps(const std::vector<std::size_t>& f, const std::vector<std::size_t>& g) {
  std::vector<std::size_t> out;
  out.reserve(f.size());
  for (std::size_t x : f) out.push_back(g.at(x));
  return out;
}

}  // namespace mca
