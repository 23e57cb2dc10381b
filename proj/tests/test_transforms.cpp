#include <cmath>

#include "doctest.h"
#include "tfq/rng.hpp"
#include "tfq/transforms.hpp"

using namespace tfq;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    REQUIRE(a.size() == b.size());
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Dense reference DFT with its own index decoding, used as an oracle for
// dft_mixed_radix.
std::vector<cplx> naive_dft(const std::vector<cplx>& in, const Coords& moduli,
                            int sign) {
    int64_t n = 1;
    for (int64_t m : moduli) n *= m;
    auto decode = [&](int64_t flat) {
        Coords c(moduli.size());
        for (size_t j = moduli.size(); j-- > 0;) {
            c[j] = flat % moduli[j];
            flat /= moduli[j];
        }
        return c;
    };
    std::vector<cplx> out(static_cast<size_t>(n));
    for (int64_t k = 0; k < n; ++k) {
        Coords kc = decode(k);
        cplx acc = 0;
        for (int64_t a = 0; a < n; ++a) {
            Coords ac = decode(a);
            double phase = 0;
            for (size_t j = 0; j < moduli.size(); ++j)
                phase += static_cast<double>(kc[j] * ac[j]) / static_cast<double>(moduli[j]);
            acc += std::polar(1.0, sign * 2.0 * kPi * phase) * in[static_cast<size_t>(a)];
        }
        out[static_cast<size_t>(k)] = acc;
    }
    return out;
}

// Literal evaluation of the defining Zak sum on the full a x a* grid.
ZakArray zak_oracle(const Signal& f, const Subgroup& sub) {
    const FiniteAbelianGroup& g = f.group;
    int64_t n = g.order();
    ZakArray z{sub, ZakDomain::full, std::vector<cplx>(static_cast<size_t>(n * n))};
    for (int64_t a = 0; a < n; ++a)
        for (int64_t s = 0; s < n; ++s) {
            cplx acc = 0;
            for (int64_t b : sub.elements())
                acc += f.values[static_cast<size_t>(g.add_index(a, b))] *
                       std::conj(char_eval(g.dual_element(s), g.element(b)));
            z.values[static_cast<size_t>(a * n + s)] = acc;
        }
    return z;
}

std::vector<std::pair<FiniteAbelianGroup, Subgroup>> sample_pairs() {
    std::vector<std::pair<FiniteAbelianGroup, Subgroup>> out;
    auto add_div = [&](Coords moduli, Coords div) {
        FiniteAbelianGroup g(moduli);
        out.emplace_back(g, Subgroup::from_divisors(g, div));
    };
    add_div({4}, {2});
    add_div({4}, {1});
    add_div({4}, {4});
    add_div({6}, {3});
    add_div({12}, {4});
    add_div({2, 4}, {1, 2});
    add_div({3, 9}, {3, 3});
    FiniteAbelianGroup g24({2, 4});
    out.emplace_back(g24, Subgroup::from_generators(g24, {g24.make_element({1, 2})}));
    return out;
}

}  // namespace

TEST_CASE("fourier: frozen values on Z4 and Z2xZ4") {
    FiniteAbelianGroup z4({4});
    Signal fhat = fourier(Signal::basis(z4, 1));
    CHECK(close(fhat.values[0], cplx(0.5, 0)));
    CHECK(close(fhat.values[1], cplx(0, -0.5)));
    CHECK(close(fhat.values[2], cplx(-0.5, 0)));
    CHECK(close(fhat.values[3], cplx(0, 0.5)));

    Signal flat = Signal::zeros(z4);
    for (auto& v : flat.values) v = 0.5;
    Signal flathat = fourier(flat);
    CHECK(close(flathat.values[0], cplx(1, 0)));
    for (size_t i = 1; i < 4; ++i) CHECK(close(flathat.values[i], cplx(0, 0)));

    FiniteAbelianGroup g({2, 4});
    Signal ghat = fourier(Signal::basis(g, 1));  // impulse at (0,1)
    double r = 1.0 / std::sqrt(8.0);
    CHECK(close(ghat.values[1], cplx(0, -r)));
    CHECK(close(ghat.values[4], cplx(r, 0)));
    CHECK(close(ghat.values[7], cplx(0, r)));
}

TEST_CASE("fourier preserves inner products and inverts") {
    for (const Coords& m : {Coords{4}, Coords{6}, Coords{2, 4}, Coords{2, 2, 3}}) {
        FiniteAbelianGroup g(m);
        Signal f = random_unit_signal(g, "transforms/ip-f/" + g.spec_string());
        Signal h = random_unit_signal(g, "transforms/ip-h/" + g.spec_string());
        Signal fhat = fourier(f);
        Signal hhat = fourier(h);
        cplx ip_time = 0, ip_freq = 0;
        for (int64_t i = 0; i < g.order(); ++i) {
            ip_time += std::conj(f.values[static_cast<size_t>(i)]) * h.values[static_cast<size_t>(i)];
            ip_freq += std::conj(fhat.values[static_cast<size_t>(i)]) * hhat.values[static_cast<size_t>(i)];
        }
        CHECK(close(ip_time, ip_freq));
        CHECK(max_diff(inverse_fourier(fhat).values, f.values) <= 1e-12);
    }
}

TEST_CASE("fourier_fast matches the dense evaluation") {
    for (const Coords& m :
         {Coords{4}, Coords{6}, Coords{8}, Coords{12}, Coords{2, 4}, Coords{3, 9}}) {
        FiniteAbelianGroup g(m);
        for (int i = 0; i < 5; ++i) {
            Signal f = random_unit_signal(
                g, "transforms/fast/" + g.spec_string() + "/" + std::to_string(i));
            CHECK(max_diff(fourier_fast(f).values, fourier(f).values) <= 1e-10);
            CHECK(max_diff(inverse_fourier(fourier_fast(f)).values, f.values) <= 1e-12);
        }
    }
}

TEST_CASE("dft_mixed_radix agrees with the dense kernel, both directions") {
    for (const Coords& m :
         {Coords{7}, Coords{9}, Coords{12}, Coords{2, 3, 5}, Coords{8, 3}}) {
        int64_t n = 1;
        for (int64_t v : m) n *= v;
        Rng rng("transforms/dft/" + std::to_string(n));
        std::vector<cplx> data(static_cast<size_t>(n));
        for (auto& v : data) v = rng.gaussian_complex();

        for (int sign : {-1, 1}) {
            std::vector<cplx> got = data;
            dft_mixed_radix(got, m, sign);
            CHECK(max_diff(got, naive_dft(data, m, sign)) <= 1e-10);
        }
        // Unnormalized forward then backward scales by the total size.
        std::vector<cplx> round = data;
        dft_mixed_radix(round, m, -1);
        dft_mixed_radix(round, m, +1);
        for (auto& v : round) v /= static_cast<double>(n);
        CHECK(max_diff(round, data) <= 1e-10);
    }
}

TEST_CASE("zak of an impulse: frozen full table on Z4") {
    FiniteAbelianGroup z4({4});
    Subgroup b = Subgroup::from_divisors(z4, {2});
    ZakArray z = zak_direct(Signal::basis(z4, 1), b);
    REQUIRE(z.values.size() == 16);
    // F(a, a*) = chi_{a*}(a - 1) when a - 1 lands in B, else 0.
    for (int64_t s = 0; s < 4; ++s) {
        CHECK(close(z.values[static_cast<size_t>(0 * 4 + s)], cplx(0, 0)));
        CHECK(close(z.values[static_cast<size_t>(2 * 4 + s)], cplx(0, 0)));
        CHECK(close(z.values[static_cast<size_t>(1 * 4 + s)], cplx(1, 0)));
        CHECK(close(z.values[static_cast<size_t>(3 * 4 + s)],
                    cplx(s % 2 == 0 ? 1 : -1, 0)));
    }
}

TEST_CASE("zak_direct equals the defining sum and is quasi-periodic") {
    for (const auto& [g, sub] : sample_pairs()) {
        Signal f = random_unit_signal(g, "transforms/zak/" + g.spec_string() + "/" +
                                             sub.spec_string());
        ZakArray z = zak_direct(f, sub);
        CHECK(max_diff(z.values, zak_oracle(f, sub).values) <= 1e-12);

        Subgroup bstar = annihilator(sub);
        int64_t n = g.order();
        for (int64_t a = 0; a < n; ++a)
            for (int64_t s = 0; s < n; ++s)
                for (int64_t b : sub.elements())
                    for (int64_t bs : bstar.elements()) {
                        cplx lhs = z.values[static_cast<size_t>(
                            g.add_index(a, b) * n + g.add_index(s, bs))];
                        cplx rhs = char_eval(g.dual_element(s), g.element(b)) *
                                   z.values[static_cast<size_t>(a * n + s)];
                        CHECK(close(lhs, rhs));
                    }
    }
}

TEST_CASE("zak_fast equals the restricted direct table") {
    for (const auto& [g, sub] : sample_pairs()) {
        CosetTables tables = coset_tables(sub);
        for (int i = 0; i < 3; ++i) {
            Signal f = random_unit_signal(g, "transforms/zakfast/" + g.spec_string() +
                                                 "/" + sub.spec_string() + "/" +
                                                 std::to_string(i));
            ZakArray fast = zak_fast(f, sub);
            ZakArray want = restrict_to_t(zak_direct(f, sub), tables);
            CHECK(fast.domain == ZakDomain::restricted_t);
            CHECK(max_diff(fast.values, want.values) <= 1e-10);
        }
    }
}

TEST_CASE("restrict and extend are mutually inverse") {
    FiniteAbelianGroup z4({4});
    Subgroup b = Subgroup::from_divisors(z4, {2});
    CosetTables tables = coset_tables(b);

    // Frozen extension step: the flat window has F = 1/sqrt(2) on the grid,
    // and F(2, t) picks up the character value chi_t(2).
    Signal rect = Signal::zeros(z4);
    rect.values[0] = rect.values[1] = 1.0 / std::sqrt(2.0);
    ZakArray grid = zak_fast(rect, b);
    for (const cplx& v : grid.values) CHECK(close(v, cplx(1.0 / std::sqrt(2.0), 0)));
    ZakArray full = extend_from_t(grid, tables);
    CHECK(close(full.values[2 * 4 + 0], cplx(1.0 / std::sqrt(2.0), 0)));
    CHECK(close(full.values[2 * 4 + 1], cplx(-1.0 / std::sqrt(2.0), 0)));

    for (const auto& [g, sub] : sample_pairs()) {
        CosetTables t = coset_tables(sub);
        Signal f = random_unit_signal(g, "transforms/ext/" + g.spec_string() + "/" +
                                             sub.spec_string());
        ZakArray direct = zak_direct(f, sub);
        CHECK(max_diff(extend_from_t(restrict_to_t(direct, t), t).values,
                       direct.values) <= 1e-12);
        ZakArray fast = zak_fast(f, sub);
        CHECK(max_diff(restrict_to_t(extend_from_t(fast, t), t).values, fast.values) <=
              1e-12);
    }
}

TEST_CASE("inverse_zak recovers the signal from either domain") {
    for (const auto& [g, sub] : sample_pairs()) {
        for (int i = 0; i < 3; ++i) {
            Signal f = random_unit_signal(g, "transforms/izak/" + g.spec_string() +
                                                 "/" + sub.spec_string() + "/" +
                                                 std::to_string(i));
            CHECK(max_diff(inverse_zak(zak_direct(f, sub)).values, f.values) <= 1e-12);
            CHECK(max_diff(inverse_zak(zak_fast(f, sub)).values, f.values) <= 1e-12);
        }
    }
}

TEST_CASE("zak is an isometry onto the transversal grid") {
    for (const auto& [g, sub] : sample_pairs()) {
        Signal f = random_unit_signal(g, "transforms/isom/" + g.spec_string() + "/" +
                                             sub.spec_string());
        ZakArray grid = zak_fast(f, sub);
        double energy = 0;
        for (const cplx& v : grid.values) energy += std::norm(v);
        energy /= static_cast<double>(sub.order());
        CHECK(std::abs(energy - f.norm() * f.norm()) <= 1e-12);
    }
}
