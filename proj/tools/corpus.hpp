#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hc/poly.hpp"

namespace hc {

struct BenchmarkEntry {
  std::string name;
  std::uint64_t bezout;
  int expected_complex_roots;
  int expected_real_roots;
};

// The benchmark systems with their published root counts.
const std::vector<BenchmarkEntry>& benchmark_table();

// Built-in systems by name: circle_line, heart, cyclic7, katsura11, ipp2.
ParsedSystem corpus_system(const std::string& name);
std::vector<std::string> corpus_names();
bool has_corpus_system(const std::string& name);

// Render a system in the input-file grammar (round-trips through the parser).
std::string render_system(const PolySystem& F, const std::vector<std::string>& names);

// Generic generators (corpus members use n=7 / n=11)
ParsedSystem make_cyclic(int n);
ParsedSystem make_katsura(int n);

}  // namespace hc
