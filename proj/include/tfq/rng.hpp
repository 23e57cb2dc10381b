#pragma once

// Deterministic random data for tests and the verification battery.  Seeds
// are derived from strings so a check named in a report can be replayed
// exactly.  Gaussian sampling is written out by hand (Box-Muller) because
// std::normal_distribution is not pinned across standard libraries and the
// battery freezes byte-identical expectations.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tfq/transforms.hpp"

namespace tfq {

// FNV-1a, 64-bit.
inline uint64_t seed_from_string(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= static_cast<uint64_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

class Rng {
public:
    explicit Rng(const std::string& label) : eng_(seed_from_string(label)) {}
    explicit Rng(uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1).  mt19937_64 output scaled by 2^-64; bias is far
    // below anything the tolerances here can see.
    double uniform() {
        return static_cast<double>(eng_()) * 0x1.0p-64;
    }

    int64_t uniform_int(int64_t n) {
        // Rejection-free modulo is fine: n is tiny next to 2^64.
        return static_cast<int64_t>(eng_() % static_cast<uint64_t>(n));
    }

    // Box-Muller, using both outputs.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    cplx gaussian_complex() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Complex gaussian entries, scaled to unit norm.
inline Signal random_unit_signal(const FiniteAbelianGroup& g, const std::string& label) {
    Rng rng(label);
    Signal f = Signal::zeros(g);
    for (auto& v : f.values) v = rng.gaussian_complex();
    double n = f.norm();
    if (n == 0.0) {  // astronomically unlikely; keep the signal valid anyway
        f.values[0] = 1.0;
        n = 1.0;
    }
    for (auto& v : f.values) v /= n;
    return f;
}

// Uniform phases in [0, 2 pi), one per point of the restricted domain.
inline std::vector<double> random_phases(int64_t count, const std::string& label) {
    Rng rng(label);
    std::vector<double> out(static_cast<size_t>(count));
    for (auto& t : out) t = 2.0 * 3.14159265358979323846 * rng.uniform();
    return out;
}

}  // namespace tfq
