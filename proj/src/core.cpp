#include "catlab/core.hpp"

namespace catlab {

const Config& Config::desk() {
  static const Config c{};
  return c;
}

const Config& Config::deep() {
  static const Config c = [] {
    Config d;
    d.value_bound = 3;
    d.shape_bound = 3;
    d.category_bound = 5;
    d.iteration_cap = 100'000'000;
    d.universality_threshold = 14;
    return d;
  }();
  return c;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

long long checked_pow(long long base, int exp, long long cap) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) throw BudgetError("table space exceeds budget");
    r *= base;
  }
  return r;
}

}  // namespace catlab
