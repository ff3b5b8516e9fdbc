#ifndef MLAB_TESTS_SUPPORT_HPP
#define MLAB_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <ostream>

#include "mlab/parse.hpp"
#include "mlab/testing/random.hpp"

namespace mlab::test {

inline Monomial mono(std::vector<Exponent> e) { return Monomial(std::move(e)); }

inline Polynomial P(const char* text, const Ring& ring) { return parse_poly(text, ring); }

} // namespace mlab::test

namespace mlab {
inline void PrintTo(const Polynomial& f, std::ostream* os) { *os << to_string(f); }
} // namespace mlab

#endif
