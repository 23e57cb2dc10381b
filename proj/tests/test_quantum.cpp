#include <cmath>
#include <functional>
#include <optional>

#include "doctest.h"
#include "tfq/quantum.hpp"
#include "tfq/rng.hpp"
#include "tfq/verify.hpp"

using namespace tfq;

namespace {

std::optional<ErrorCode> thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

// Column-a amplitudes straight from the definition: apply the classical
// restricted Zak transform to the impulse at a.  Independent of the matrix
// construction in direct_qzt_matrix.
CMatrix qzt_matrix_oracle(const CosetTables& tables) {
    const FiniteAbelianGroup& g = tables.subgroup.parent();
    int64_t n = g.order();
    double scale = 1.0 / std::sqrt(static_cast<double>(tables.subgroup.order()));
    CMatrix m = CMatrix::zeros(n);
    for (int64_t a = 0; a < n; ++a) {
        ZakArray z = zak_fast(Signal::basis(g, a), tables.subgroup);
        for (int64_t i = 0; i < tables.t1_size(); ++i)
            for (int64_t j = 0; j < tables.t2_size(); ++j)
                m.at(i * tables.t2_size() + j, a) =
                    scale * z.values[static_cast<size_t>(i * tables.t2_size() + j)];
    }
    return m;
}

// Row-(b, b_*) amplitudes from hand-built translates.
CMatrix qwht_matrix_oracle(const Window& w) {
    const FiniteAbelianGroup& g = w.g.group;
    int64_t n = g.order();
    CMatrix m = CMatrix::zeros(n);
    for (size_t d = 0; d < w.lattice.delta.size(); ++d) {
        auto [b, bs] = w.lattice.delta[d];
        for (int64_t a = 0; a < n; ++a) {
            cplx t = w.g.values[static_cast<size_t>(g.sub_index(a, b))] *
                     char_eval(g.dual_element(bs), g.element(a));
            m.at(static_cast<int64_t>(d), a) = std::conj(t);
        }
    }
    return m;
}

CMatrix fourier_matrix_oracle(const FiniteAbelianGroup& g) {
    int64_t n = g.order();
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix m = CMatrix::zeros(n);
    for (int64_t r = 0; r < n; ++r)
        for (int64_t c = 0; c < n; ++c)
            m.at(r, c) = scale * std::conj(char_eval(g.dual_element(r), g.element(c)));
    return m;
}

double matrix_diff(const CMatrix& x, const CMatrix& y) {
    REQUIRE(x.dim == y.dim);
    return max_abs_diff(x.a, y.a);
}

Window rect_window() {
    FiniteAbelianGroup z4({4});
    return window_from_phases({0, 0, 0, 0}, Subgroup::from_divisors(z4, {2}));
}

}  // namespace

TEST_CASE("stage_pb: frozen coset-split permutation on Z4") {
    FiniteAbelianGroup z4({4});
    CosetTables t = coset_tables(Subgroup::from_divisors(z4, {2}));
    Stage s = stage_pb(t);
    REQUIRE(s.kind == Stage::Kind::permutation);
    CHECK(s.perm == std::vector<int64_t>{0, 2, 1, 3});
    CHECK(s.to_matrix().unitarity_defect() == 0);

    // |3> -> |x_3 = 1>|x_3 - 3 = 2>, i.e. position (1, 1) -> flat 3.
    std::vector<cplx> in(4, 0);
    in[3] = 1;
    std::vector<cplx> out = s.apply(in);
    CHECK(close(out[3], cplx(1, 0)));
}

TEST_CASE("stage_fb: frozen two-point block") {
    FiniteAbelianGroup z4({4});
    CosetTables t = coset_tables(Subgroup::from_divisors(z4, {2}));
    Stage s = stage_fb(t);
    REQUIRE(s.kind == Stage::Kind::block_fourier);
    CHECK(s.left.empty());
    double r = 1.0 / std::sqrt(2.0);
    REQUIRE(s.block.size() == 4);
    CHECK(close(s.block[0], cplx(r, 0)));
    CHECK(close(s.block[1], cplx(r, 0)));
    CHECK(close(s.block[2], cplx(r, 0)));
    CHECK(close(s.block[3], cplx(-r, 0)));
    CHECK(s.to_matrix().unitarity_defect() <= 1e-15);
}

TEST_CASE("qzt pipeline: frozen action, register meanings, direct match") {
    FiniteAbelianGroup z4({4});
    CosetTables t = coset_tables(Subgroup::from_divisors(z4, {2}));
    Pipeline p = qzt_pipeline(t);
    REQUIRE(p.stages.size() == 2);
    REQUIRE(p.layouts.size() == 3);
    CHECK(p.layouts[0].registers.size() == 1);
    CHECK(p.layouts[0].registers[0].kind == RegisterKind::element_of_a);
    CHECK(p.layouts[2].registers[0].kind == RegisterKind::coset_rep_t1);
    CHECK(p.layouts[2].registers[1].kind == RegisterKind::char_t2);

    // |3> -> (|1>|0> - |1>|1>)/sqrt(2): flats 2 and 3.
    std::vector<cplx> in(4, 0);
    in[3] = 1;
    std::vector<cplx> out = p.apply(in);
    double r = 1.0 / std::sqrt(2.0);
    CHECK(close(out[0], cplx(0, 0)));
    CHECK(close(out[1], cplx(0, 0)));
    CHECK(close(out[2], cplx(r, 0)));
    CHECK(close(out[3], cplx(-r, 0)));

    EquivalenceReport rep = verify_equivalence(p, direct_qzt_matrix(t), 1e-10,
                                               qzt_row_relabelings(t));
    CHECK(rep.pass);
    CHECK(rep.best_name == "canonical");
}

TEST_CASE("direct_qzt_matrix equals the classical-transform oracle") {
    for (const auto& g : battery_groups()) {
        if (g.order() > 16) continue;
        std::vector<Subgroup> subs = all_aligned_subgroups(g);
        std::vector<Subgroup> gen = sample_generated_subgroups(g, 2);
        subs.insert(subs.end(), gen.begin(), gen.end());
        for (const Subgroup& sub : subs) {
            CosetTables t = coset_tables(sub);
            CHECK(matrix_diff(direct_qzt_matrix(t), qzt_matrix_oracle(t)) <= 1e-12);
        }
    }
}

TEST_CASE("qzt pipeline equals direct across sampled pairs, stages unitary") {
    for (const auto& g : battery_groups()) {
        if (g.order() > 12) continue;
        std::vector<Subgroup> subs = all_aligned_subgroups(g);
        std::vector<Subgroup> gen = sample_generated_subgroups(g, 2);
        subs.insert(subs.end(), gen.begin(), gen.end());
        for (const Subgroup& sub : subs) {
            CosetTables t = coset_tables(sub);
            Pipeline p = qzt_pipeline(t);
            for (const Stage& s : p.stages)
                CHECK(s.to_matrix().unitarity_defect() <= 1e-12);
            CHECK(p.compose_matrix().unitarity_defect() <= 1e-12);
            EquivalenceReport rep = verify_equivalence(p, direct_qzt_matrix(t), 1e-10,
                                                       qzt_row_relabelings(t));
            CHECK(rep.pass);

            // apply() and the composed matrix act identically.
            Signal f = random_unit_signal(g, "quantum/apply/" + g.spec_string() +
                                                 "/" + sub.spec_string());
            CHECK(max_abs_diff(p.apply(f.values),
                               p.compose_matrix().apply(f.values)) <= 1e-12);
        }
    }
}

TEST_CASE("qzt endpoints: trivial subgroup is identity, full subgroup is fourier") {
    for (const auto& g : battery_groups()) {
        if (g.order() > 16) continue;
        Coords trivial(g.factors()), full(g.factors(), 1);
        for (size_t j = 0; j < g.factors(); ++j) trivial[j] = g.moduli()[j];

        CMatrix id_like = qzt_pipeline(coset_tables(Subgroup::from_divisors(g, trivial)))
                              .compose_matrix();
        CHECK(matrix_diff(id_like, CMatrix::identity(g.order())) <= 1e-12);

        CMatrix four = qzt_pipeline(coset_tables(Subgroup::from_divisors(g, full)))
                           .compose_matrix();
        CHECK(matrix_diff(four, fourier_matrix_oracle(g)) <= 1e-10);
    }
}

TEST_CASE("stage_phi: unit phases that flatten the window table") {
    Window w = rect_window();
    CosetTables t = w.lattice.tables;
    Stage s = stage_phi(w);
    REQUIRE(s.kind == Stage::Kind::diagonal_phase);
    REQUIRE(s.diag.size() == 4);
    for (size_t i = 0; i < s.diag.size(); ++i) {
        CHECK(std::abs(std::abs(s.diag[i]) - 1.0) <= 1e-15);
        cplx flattened = s.diag[i] * w.zak_g.values[i];
        CHECK(std::abs(flattened.imag()) <= 1e-12);
        CHECK(flattened.real() >= 0);
    }

    FiniteAbelianGroup z4({4});
    Window bad = check_window(Signal::basis(z4, 0), Subgroup::from_divisors(z4, {2}));
    CHECK(thrown_code([&] { stage_phi(bad); }) == ErrorCode::invalid_window);
}

TEST_CASE("stage_reinterpret is the identity under canonical labels") {
    // Lexicographic transversals and sorted subgroup enumerations make both
    // index maps trivial; the stage still derives them from phi.
    for (const Coords& div : {Coords{2}, Coords{1}, Coords{4}}) {
        FiniteAbelianGroup z4({4});
        Subgroup sub = Subgroup::from_divisors(z4, div);
        CosetTables t = coset_tables(sub);
        Stage s = stage_reinterpret(make_phi(z4, sub), t);
        REQUIRE(s.kind == Stage::Kind::permutation);
        for (size_t i = 0; i < s.perm.size(); ++i)
            CHECK(s.perm[i] == static_cast<int64_t>(i));
    }
}

TEST_CASE("stage_f_delta is unitary with the expected register split") {
    FiniteAbelianGroup g({2, 4});
    Subgroup sub = Subgroup::from_divisors(g, {1, 2});
    CosetTables t = coset_tables(sub);
    Stage s = stage_f_delta(make_phi(g, sub), t);
    REQUIRE(s.kind == Stage::Kind::block_fourier);
    CHECK(s.left_dim == annihilator(sub).order());
    CHECK(s.block_dim == sub.order());
    CHECK(s.swap_registers);
    CHECK(s.to_matrix().unitarity_defect() <= 1e-12);
}

TEST_CASE("qwht pipeline: frozen flat-window case and layout trail") {
    Window w = rect_window();
    FiniteAbelianGroup z4 = w.g.group;
    Pipeline p = qwht_pipeline(w, make_phi(z4, w.lattice.subgroup));
    REQUIRE(p.stages.size() == 5);
    REQUIRE(p.layouts.size() == 6);
    CHECK(p.layouts[5].registers[0].kind == RegisterKind::element_of_b);
    CHECK(p.layouts[5].registers[1].kind == RegisterKind::element_of_bstar);

    // |0> carries coefficients (1, 1, 0, 0)/sqrt(2) in lattice order.
    std::vector<cplx> in(4, 0);
    in[0] = 1;
    std::vector<cplx> out = p.apply(in);
    double r = 1.0 / std::sqrt(2.0);
    CHECK(close(out[0], cplx(r, 0)));
    CHECK(close(out[1], cplx(r, 0)));
    CHECK(close(out[2], cplx(0, 0)));
    CHECK(close(out[3], cplx(0, 0)));

    EquivalenceReport rep =
        verify_equivalence(p, direct_qwht_matrix(w), 1e-10,
                           qwht_row_relabelings(w.lattice.tables));
    CHECK(rep.pass);
    CHECK(rep.best_name == "canonical");
}

TEST_CASE("direct_qwht_matrix equals the translate oracle") {
    for (const auto& g : battery_groups()) {
        if (g.order() > 12) continue;
        for (const Subgroup& sub : all_aligned_subgroups(g)) {
            std::string tag = g.spec_string() + "/" + sub.spec_string();
            Window w = window_from_phases(random_phases(g.order(), "quantum/qwht-w/" + tag),
                                          sub);
            CHECK(matrix_diff(direct_qwht_matrix(w), qwht_matrix_oracle(w)) <= 1e-12);
        }
    }
}

TEST_CASE("qwht pipeline equals direct; output amplitudes are coefficients") {
    for (const auto& g : battery_groups()) {
        if (g.order() > 12) continue;
        for (const Subgroup& sub : all_aligned_subgroups(g)) {
            std::string tag = g.spec_string() + "/" + sub.spec_string();
            Window w = window_from_phases(
                random_phases(g.order(), "quantum/qwht-pipe/" + tag), sub);
            Pipeline p = qwht_pipeline(w, make_phi(g, sub));
            for (const Stage& s : p.stages)
                CHECK(s.to_matrix().unitarity_defect() <= 1e-12);
            CHECK(p.compose_matrix().unitarity_defect() <= 1e-12);

            EquivalenceReport rep =
                verify_equivalence(p, direct_qwht_matrix(w), 1e-10,
                                   qwht_row_relabelings(w.lattice.tables));
            CHECK(rep.pass);
            CHECK(rep.best_name == "canonical");

            Signal f = random_unit_signal(g, "quantum/qwht-sig/" + tag);
            WHCoefficients alpha = wh_analyze(f, w);
            CHECK(max_abs_diff(p.apply(f.values), alpha.values) <= 1e-10);
        }
    }

    // Generated subgroups have no aligned isomorphisms to relabel through.
    FiniteAbelianGroup z4({4});
    Subgroup gen = Subgroup::from_generators(z4, {z4.make_element({2})});
    CHECK(thrown_code([&] { make_phi(z4, gen); }) == ErrorCode::unsupported_subgroup);
}

TEST_CASE("qwht endpoint: flat window over the trivial subgroup is fourier") {
    for (const auto& g : battery_groups()) {
        if (g.order() > 12) continue;
        Coords trivial(g.factors());
        for (size_t j = 0; j < g.factors(); ++j) trivial[j] = g.moduli()[j];
        Subgroup sub = Subgroup::from_divisors(g, trivial);

        // Constant window: Zak table is flat, all phases zero.
        Window w = window_from_phases(std::vector<double>(static_cast<size_t>(g.order()), 0.0),
                                      sub);
        CMatrix composed = qwht_pipeline(w, make_phi(g, sub)).compose_matrix();
        CHECK(matrix_diff(composed, fourier_matrix_oracle(g)) <= 1e-12);
        CHECK(matrix_diff(direct_qwht_matrix(w), fourier_matrix_oracle(g)) <= 1e-12);
    }
}

TEST_CASE("verify_equivalence names the relabeling that explains a mismatch") {
    // With B trivial on Z4 the pipeline is the identity; negating the coset
    // representative permutes its rows by a -> -a.  Feeding that permuted
    // matrix as the "direct" side must fail the canonical comparison and be
    // pinned to the negate-rep relabeling at zero deviation.
    FiniteAbelianGroup z4({4});
    CosetTables t = coset_tables(Subgroup::from_divisors(z4, {4}));
    Pipeline p = qzt_pipeline(t);

    CMatrix permuted = CMatrix::zeros(4);
    for (int64_t r = 0; r < 4; ++r) permuted.at((4 - r) % 4, r) = 1.0;

    EquivalenceReport rep =
        verify_equivalence(p, permuted, 1e-10, qzt_row_relabelings(t));
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_dev > 0.5);
    CHECK(rep.best_name == "negate-rep");
    CHECK(rep.best_dev <= 1e-15);
}

TEST_CASE("register kind names are stable strings") {
    CHECK(register_kind_name(RegisterKind::element_of_a) == "element_of_a");
    CHECK(register_kind_name(RegisterKind::coset_rep_t1) == "coset_rep_t1");
    CHECK(register_kind_name(RegisterKind::char_t2) == "char_t2");
    CHECK(register_kind_name(RegisterKind::element_of_b) == "element_of_b");
    CHECK(register_kind_name(RegisterKind::element_of_bstar) == "element_of_bstar");
}

TEST_CASE("unitarity defect separates unitary from non-unitary") {
    CHECK(CMatrix::identity(5).unitarity_defect() == 0);
    CMatrix m = CMatrix::identity(3);
    m.at(0, 0) = 2.0;
    CHECK(m.unitarity_defect() == doctest::Approx(3.0));
}
