#include "congestlab/comm.hpp"

#include <stdexcept>

namespace congestlab {

bool disj(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.get(i) && y.get(i)) return false;
  }
  return true;
}

bool eq(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  return x == y;
}

bool validate_disj_input(const BitString& x, const BitString& y) {
  return !x.all_ones() && !y.all_ones();
}

}  // namespace congestlab
