#include "tfq/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tfq {

namespace {

std::string lowercase(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

int64_t parse_int(const std::string& tok, ErrorCode code, const std::string& what) {
    size_t pos = 0;
    int64_t v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        fail(code, "expected an integer in " + what + ", got '" + tok + "'");
    }
    if (pos != tok.size())
        fail(code, "trailing characters after integer in " + what + ": '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

FiniteAbelianGroup parse_group_spec(const std::string& text) {
    std::string s = lowercase(text);
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) fail(ErrorCode::invalid_group, "empty group spec");
    Coords moduli;
    for (const std::string& tok : split(s, 'x')) {
        if (tok.size() < 2 || tok[0] != 'z')
            fail(ErrorCode::invalid_group,
                 "group spec factors look like Z<n>, got '" + tok + "' in '" + text + "'");
        int64_t n = parse_int(tok.substr(1), ErrorCode::invalid_group, "group spec");
        if (n < 1) fail(ErrorCode::invalid_group, "group factor must be positive");
        moduli.push_back(n);
    }
    return FiniteAbelianGroup(moduli);
}

Subgroup parse_subgroup_spec(const FiniteAbelianGroup& g, const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    std::string head = lowercase(s.substr(0, 4));
    if (head == "div:") {
        Coords divisors;
        for (const std::string& tok : split(s.substr(4), ','))
            divisors.push_back(parse_int(tok, ErrorCode::invalid_subgroup, "divisor list"));
        return Subgroup::from_divisors(g, divisors);
    }
    if (head == "gen:") {
        std::vector<GroupElement> gens;
        for (const std::string& tok : split(s.substr(4), ';')) {
            if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
                fail(ErrorCode::invalid_subgroup,
                     "generators are written (c1,...,ck); got '" + tok + "'");
            Coords coords;
            for (const std::string& c : split(tok.substr(1, tok.size() - 2), ','))
                coords.push_back(parse_int(c, ErrorCode::invalid_subgroup, "generator"));
            if (coords.size() != g.factors())
                fail(ErrorCode::invalid_subgroup, "generator has wrong number of coordinates");
            gens.push_back(g.make_element(coords));
        }
        return Subgroup::from_generators(g, gens);
    }
    fail(ErrorCode::invalid_subgroup,
         "subgroup spec starts with div: or gen:, got '" + text + "'");
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::parse_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::parse_error, "cannot write '" + path + "'");
    out << content;
}

namespace {

void append_group_field(std::string& out, const FiniteAbelianGroup& g) {
    out += "  \"group\": [";
    for (size_t j = 0; j < g.moduli().size(); ++j) {
        if (j) out += ", ";
        out += std::to_string(g.moduli()[j]);
    }
    out += "]";
}

void append_complex_array(std::string& out, const char* key, const std::vector<cplx>& v) {
    out += "  \"";
    out += key;
    out += "\": [\n";
    for (size_t i = 0; i < v.size(); ++i) {
        out += "    [" + format_number(v[i].real()) + ", " + format_number(v[i].imag()) + "]";
        out += (i + 1 < v.size()) ? ",\n" : "\n";
    }
    out += "  ]";
}

nlohmann::json parse_document(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
    }
}

FiniteAbelianGroup group_from_field(const nlohmann::json& j) {
    if (!j.contains("group") || !j["group"].is_array())
        fail(ErrorCode::parse_error, "missing \"group\" array");
    Coords moduli;
    for (const auto& e : j["group"]) {
        if (!e.is_number_integer())
            fail(ErrorCode::parse_error, "\"group\" entries must be integers");
        moduli.push_back(e.get<int64_t>());
    }
    return FiniteAbelianGroup(moduli);
}

std::vector<cplx> complex_array_from_field(const nlohmann::json& j, const char* key,
                                           int64_t expected) {
    if (!j.contains(key) || !j[key].is_array())
        fail(ErrorCode::parse_error, std::string("missing \"") + key + "\" array");
    const auto& arr = j[key];
    if (static_cast<int64_t>(arr.size()) != expected)
        fail(ErrorCode::shape_error,
             std::string("\"") + key + "\" has " + std::to_string(arr.size()) +
                 " entries, expected " + std::to_string(expected));
    std::vector<cplx> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            fail(ErrorCode::parse_error, "complex entries are [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

std::string string_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        fail(ErrorCode::parse_error, std::string("missing \"") + key + "\" string");
    return j[key].get<std::string>();
}

}  // namespace

std::string signal_to_json(const Signal& f) {
    std::string out = "{\n";
    append_group_field(out, f.group);
    out += ",\n";
    append_complex_array(out, "values", f.values);
    out += "\n}\n";
    return out;
}

Signal signal_from_json(const std::string& text) {
    nlohmann::json j = parse_document(text);
    Signal f;
    f.group = group_from_field(j);
    f.values = complex_array_from_field(j, "values", f.group.order());
    return f;
}

std::string zak_to_json(const ZakArray& z) {
    const FiniteAbelianGroup& g = z.subgroup.parent();
    std::string out = "{\n";
    append_group_field(out, g);
    out += ",\n  \"subgroup\": \"" + z.subgroup.spec_string() + "\",\n";
    out += "  \"domain\": \"";
    out += (z.domain == ZakDomain::full) ? "full" : "T";
    out += "\",\n";
    append_complex_array(out, "values", z.values);
    out += "\n}\n";
    return out;
}

ZakArray zak_from_json(const std::string& text) {
    nlohmann::json j = parse_document(text);
    FiniteAbelianGroup g = group_from_field(j);
    ZakArray z;
    z.subgroup = parse_subgroup_spec(g, string_field(j, "subgroup"));
    std::string dom = string_field(j, "domain");
    if (dom == "full")
        z.domain = ZakDomain::full;
    else if (dom == "T")
        z.domain = ZakDomain::restricted_t;
    else
        fail(ErrorCode::parse_error, "\"domain\" must be \"full\" or \"T\"");
    // A full table has |A|^2 entries; the T grid always has exactly |A|.
    int64_t expected = (z.domain == ZakDomain::full) ? g.order() * g.order() : g.order();
    z.values = complex_array_from_field(j, "values", expected);
    return z;
}

WindowFile window_file_from_json(const std::string& text) {
    nlohmann::json j = parse_document(text);
    WindowFile w;
    // A document without a "kind" marker is read as a plain signal file, so
    // any signal the transforms emit can be offered as a window candidate.
    std::string kind = j.contains("kind") ? string_field(j, "kind") : "signal";
    if (kind == "signal") {
        w.is_phases = false;
        w.signal.group = group_from_field(j);
        w.group = w.signal.group;
        w.signal.values = complex_array_from_field(j, "values", w.signal.group.order());
        if (j.contains("subgroup")) {
            w.subgroup = parse_subgroup_spec(w.group, string_field(j, "subgroup"));
            w.has_subgroup = true;
        }
        return w;
    }
    if (kind != "phases")
        fail(ErrorCode::parse_error, "window \"kind\" must be \"signal\" or \"phases\"");
    w.is_phases = true;
    w.has_subgroup = true;
    w.group = group_from_field(j);
    w.subgroup = parse_subgroup_spec(w.group, string_field(j, "subgroup"));
    if (!j.contains("phases") || !j["phases"].is_array())
        fail(ErrorCode::parse_error, "missing \"phases\" array");
    const auto& arr = j["phases"];
    if (static_cast<int64_t>(arr.size()) != w.group.order())
        fail(ErrorCode::shape_error, "\"phases\" needs one [p, q] entry per T point");
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            fail(ErrorCode::parse_error, "phases are integer [p, q] pairs meaning 2*pi*p/q");
        int64_t p = e[0].get<int64_t>(), q = e[1].get<int64_t>();
        if (q < 1) fail(ErrorCode::parse_error, "phase denominator must be positive");
        w.theta.push_back(two_pi * static_cast<double>(p) / static_cast<double>(q));
    }
    return w;
}

std::string window_signal_to_json(const Signal& g, const std::string& subgroup_spec) {
    std::string out = "{\n  \"kind\": \"signal\",\n";
    append_group_field(out, g.group);
    out += ",\n";
    if (!subgroup_spec.empty()) out += "  \"subgroup\": \"" + subgroup_spec + "\",\n";
    append_complex_array(out, "values", g.values);
    out += "\n}\n";
    return out;
}

std::string window_phases_to_json(const FiniteAbelianGroup& g, const Subgroup& sub,
                                  const std::vector<std::pair<int64_t, int64_t>>& pq) {
    std::string out = "{\n  \"kind\": \"phases\",\n";
    append_group_field(out, g);
    out += ",\n  \"subgroup\": \"" + sub.spec_string() + "\",\n  \"phases\": [\n";
    for (size_t i = 0; i < pq.size(); ++i) {
        out += "    [" + std::to_string(pq[i].first) + ", " + std::to_string(pq[i].second) + "]";
        out += (i + 1 < pq.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::string alpha_to_json(const WHCoefficients& alpha) {
    std::string out = "{\n";
    append_group_field(out, alpha.subgroup.parent());
    out += ",\n  \"subgroup\": \"" + alpha.subgroup.spec_string() + "\",\n";
    out += "  \"domain\": \"delta\",\n";
    append_complex_array(out, "values", alpha.values);
    out += "\n}\n";
    return out;
}

WHCoefficients alpha_from_json(const std::string& text) {
    nlohmann::json j = parse_document(text);
    FiniteAbelianGroup g = group_from_field(j);
    WHCoefficients alpha;
    alpha.subgroup = parse_subgroup_spec(g, string_field(j, "subgroup"));
    if (string_field(j, "domain") != "delta")
        fail(ErrorCode::parse_error, "coefficient files have \"domain\": \"delta\"");
    // |Delta| = |B| * |B_*| = |A|.
    alpha.values = complex_array_from_field(j, "values", g.order());
    return alpha;
}

std::string pipeline_to_json(const Pipeline& p, bool include_matrix) {
    std::string out = "{\n  \"dim\": " + std::to_string(p.dim) + ",\n  \"stages\": [\n";
    for (size_t si = 0; si < p.stages.size(); ++si) {
        const Stage& s = p.stages[si];
        out += "    {\n      \"name\": \"" + s.name + "\",\n";
        out += "      \"dim\": " + std::to_string(s.dim) + ",\n";
        switch (s.kind) {
            case Stage::Kind::permutation: {
                out += "      \"kind\": \"permutation\",\n      \"perm\": [";
                for (size_t i = 0; i < s.perm.size(); ++i) {
                    if (i) out += ", ";
                    out += std::to_string(s.perm[i]);
                }
                out += "]\n";
                break;
            }
            case Stage::Kind::diagonal_phase: {
                out += "      \"kind\": \"diagonal_phase\",\n";
                out += "      \"diag\": [";
                for (size_t i = 0; i < s.diag.size(); ++i) {
                    if (i) out += ", ";
                    out += "[" + format_number(s.diag[i].real()) + ", " +
                           format_number(s.diag[i].imag()) + "]";
                }
                out += "]\n";
                break;
            }
            case Stage::Kind::block_fourier: {
                out += "      \"kind\": \"block_fourier\",\n";
                out += "      \"left_dim\": " + std::to_string(s.left_dim) + ",\n";
                out += "      \"block_dim\": " + std::to_string(s.block_dim) + ",\n";
                out += std::string("      \"swap_registers\": ") +
                       (s.swap_registers ? "true" : "false") + ",\n";
                auto emit_square = [&](const char* key, const std::vector<cplx>& m, int64_t n) {
                    out += std::string("      \"") + key + "\": ";
                    if (m.empty()) {
                        out += "null";
                        return;
                    }
                    out += "[\n";
                    for (int64_t r = 0; r < n; ++r) {
                        out += "        [";
                        for (int64_t c = 0; c < n; ++c) {
                            if (c) out += ", ";
                            const cplx& v = m[static_cast<size_t>(r * n + c)];
                            out += "[" + format_number(v.real()) + ", " +
                                   format_number(v.imag()) + "]";
                        }
                        out += (r + 1 < n) ? "],\n" : "]\n";
                    }
                    out += "      ]";
                };
                emit_square("left", s.left, s.left_dim);
                out += ",\n";
                emit_square("block", s.block, s.block_dim);
                out += "\n";
                break;
            }
            case Stage::Kind::dense: {
                out += "      \"kind\": \"dense\",\n";
                out += "      \"matrix\": [\n";
                for (int64_t r = 0; r < s.dense.dim; ++r) {
                    out += "        [";
                    for (int64_t c = 0; c < s.dense.dim; ++c) {
                        if (c) out += ", ";
                        const cplx& v = s.dense.at(r, c);
                        out += "[" + format_number(v.real()) + ", " + format_number(v.imag()) +
                               "]";
                    }
                    out += (r + 1 < s.dense.dim) ? "],\n" : "]\n";
                }
                out += "      ]\n";
                break;
            }
        }
        out += (si + 1 < p.stages.size()) ? "    },\n" : "    }\n";
    }
    out += "  ],\n  \"layouts\": [\n";
    for (size_t li = 0; li < p.layouts.size(); ++li) {
        out += "    [";
        for (size_t r = 0; r < p.layouts[li].registers.size(); ++r) {
            if (r) out += ", ";
            out += "{\"kind\": \"" + register_kind_name(p.layouts[li].registers[r].kind) +
                   "\", \"dim\": " + std::to_string(p.layouts[li].registers[r].dim) + "}";
        }
        out += (li + 1 < p.layouts.size()) ? "],\n" : "]\n";
    }
    out += "  ]";
    if (include_matrix) {
        CMatrix m = p.compose_matrix();
        out += ",\n  \"matrix\": [\n";
        for (int64_t r = 0; r < m.dim; ++r) {
            out += "    [";
            for (int64_t c = 0; c < m.dim; ++c) {
                if (c) out += ", ";
                out += "[" + format_number(m.at(r, c).real()) + ", " +
                       format_number(m.at(r, c).imag()) + "]";
            }
            out += (r + 1 < m.dim) ? "],\n" : "]\n";
        }
        out += "  ]";
    }
    out += "\n}\n";
    return out;
}

}  // namespace tfq
