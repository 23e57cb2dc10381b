#pragma once

// Text formats: group/subgroup spec strings and the JSON artifact files the
// CLI reads and writes.  Writers emit a fixed layout with 17-significant-
// digit numbers, so identical inputs give byte-identical files.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tfq/group.hpp"
#include "tfq/quantum.hpp"
#include "tfq/transforms.hpp"
#include "tfq/windows.hpp"

namespace tfq {

// "Z4", "Z2xZ4" (case-insensitive).
FiniteAbelianGroup parse_group_spec(const std::string& text);

// "div:2,1" (one divisor per factor) or "gen:(1,2);(0,2)".
Subgroup parse_subgroup_spec(const FiniteAbelianGroup& g, const std::string& text);

// %.17g — enough digits to round-trip a double exactly.
std::string format_number(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// {"group": [...], "values": [[re,im], ...]} in element order.
std::string signal_to_json(const Signal& f);
Signal signal_from_json(const std::string& text);

// Signal fields plus "subgroup" and "domain" ("full" | "T").  Full tables
// are stored a-major over (a, a*); restricted tables T1-major over (x, t).
std::string zak_to_json(const ZakArray& z);
ZakArray zak_from_json(const std::string& text);

// A window file either embeds the window signal directly or gives phase
// angles on the restricted domain as exact rational multiples [p, q] of
// 2 pi, in the same T1-major order the restricted Zak table uses.  Signal
// files may carry an optional "subgroup" key (window make writes it) so
// analysis commands need no extra flag.
struct WindowFile {
    bool is_phases = false;
    bool has_subgroup = false;  // always true for phases files
    Signal signal;              // kind "signal"
    FiniteAbelianGroup group;
    Subgroup subgroup;
    std::vector<double> theta;  // kind "phases": 2*pi*p/q per T point
};
WindowFile window_file_from_json(const std::string& text);
std::string window_signal_to_json(const Signal& g, const std::string& subgroup_spec = "");
std::string window_phases_to_json(const FiniteAbelianGroup& g, const Subgroup& sub,
                                  const std::vector<std::pair<int64_t, int64_t>>& pq);

// {"group", "subgroup", "domain": "delta", "values"} over the lattice
// Delta = B x B_* in b-major order.
std::string alpha_to_json(const WHCoefficients& alpha);
WHCoefficients alpha_from_json(const std::string& text);

// Ordered stage descriptors, register layouts, and (optionally) the dense
// composed matrix, row-major with [re,im] entries.
std::string pipeline_to_json(const Pipeline& p, bool include_matrix);

}  // namespace tfq
