#pragma once

#include <cstdint>
#include <iosfwd>

namespace wigner::verify {

// Desk-scale property suites behind `wignerlab verify`. Output is a fixed
// sequence of "name: passed/total" lines; byte-identical for a given seed.
bool run_graph(std::ostream& out, std::uint64_t seed);
bool run_xset(std::ostream& out, std::uint64_t seed);
bool run_roundtrip(std::ostream& out, std::uint64_t seed);
bool run_all(std::ostream& out, std::uint64_t seed);

}  // namespace wigner::verify
