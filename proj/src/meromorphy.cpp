#include "heun/meromorphy.hpp"

#include <charconv>

#include "heun/errors.hpp"

namespace heun {

void require_nonnegative(const MeromorphyVector& mv) {
  if (mv.m0 < 0 || mv.m1 < 0 || mv.m2 < 0 || mv.m3 < 0) {
    throw DomainError("meromorphy vector: negative entries must be normalized first");
  }
}

HeunParams params_from_meromorphy(const MeromorphyVector& mv, cplx k2, cplx s) {
  require_nonnegative(mv);
  const double M = mv.M();
  return {k2,
          s,
          -0.5 * (mv.m0 + M),
          0.5 * (mv.m0 - M + 1.0),
          0.5 - mv.m1,
          0.5 - mv.m2};
}

MeromorphyVector parse_meromorphy(std::string_view text) {
  int v[4];
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t end = i < 3 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) throw DomainError("meromorphy vector: expected m0,m1,m2,m3");
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    const auto res = std::from_chars(first, last, v[i]);
    if (res.ec != std::errc() || res.ptr != last) {
      throw DomainError("meromorphy vector: bad integer in '" + std::string(text) + "'");
    }
    pos = end + 1;
  }
  MeromorphyVector mv{v[0], v[1], v[2], v[3]};
  require_nonnegative(mv);
  return mv;
}

std::string format_meromorphy(const MeromorphyVector& mv) {
  return std::to_string(mv.m0) + "," + std::to_string(mv.m1) + "," + std::to_string(mv.m2) + "," +
         std::to_string(mv.m3);
}

}  // namespace heun
