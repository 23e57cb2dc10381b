#include "tfq/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace tfq {

CMatrix CMatrix::identity(int64_t n) {
    CMatrix m = zeros(n);
    for (int64_t i = 0; i < n; ++i) m.at(i, i) = cplx{1.0, 0.0};
    return m;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& v) const {
    if (v.size() != static_cast<size_t>(dim))
        fail(ErrorCode::shape_error, "vector length does not match matrix dimension");
    std::vector<cplx> out(static_cast<size_t>(dim), cplx{0.0, 0.0});
    for (int64_t r = 0; r < dim; ++r) {
        cplx acc{0.0, 0.0};
        const cplx* row = a.data() + r * dim;
        for (int64_t c = 0; c < dim; ++c) acc += row[c] * v[static_cast<size_t>(c)];
        out[static_cast<size_t>(r)] = acc;
    }
    return out;
}

CMatrix CMatrix::multiply(const CMatrix& rhs) const {
    if (dim != rhs.dim)
        fail(ErrorCode::shape_error, "matrix dimension mismatch");
    CMatrix out = zeros(dim);
    for (int64_t r = 0; r < dim; ++r)
        for (int64_t k = 0; k < dim; ++k) {
            cplx v = at(r, k);
            if (v == cplx{0.0, 0.0}) continue;
            for (int64_t c = 0; c < dim; ++c) out.at(r, c) += v * rhs.at(k, c);
        }
    return out;
}

double CMatrix::unitarity_defect() const {
    double worst = 0.0;
    for (int64_t r = 0; r < dim; ++r)
        for (int64_t c = 0; c < dim; ++c) {
            cplx acc{0.0, 0.0};
            for (int64_t k = 0; k < dim; ++k) acc += std::conj(at(k, r)) * at(k, c);
            if (r == c) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    return worst;
}

double max_abs_diff(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    if (x.size() != y.size())
        fail(ErrorCode::shape_error, "length mismatch in comparison");
    double worst = 0.0;
    for (size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

std::string register_kind_name(RegisterKind k) {
    switch (k) {
        case RegisterKind::element_of_a: return "element_of_a";
        case RegisterKind::coset_rep_t1: return "coset_rep_t1";
        case RegisterKind::element_of_b: return "element_of_b";
        case RegisterKind::char_t2: return "char_t2";
        case RegisterKind::element_of_bstar: return "element_of_bstar";
    }
    return "unknown";
}

std::vector<cplx> Stage::apply(const std::vector<cplx>& in) const {
    if (in.size() != static_cast<size_t>(dim))
        fail(ErrorCode::shape_error, "state length does not match stage dimension");
    switch (kind) {
        case Kind::permutation: {
            std::vector<cplx> out(in.size());
            for (int64_t i = 0; i < dim; ++i)
                out[static_cast<size_t>(perm[static_cast<size_t>(i)])] = in[static_cast<size_t>(i)];
            return out;
        }
        case Kind::diagonal_phase: {
            std::vector<cplx> out(in.size());
            for (size_t i = 0; i < in.size(); ++i) out[i] = diag[i] * in[i];
            return out;
        }
        case Kind::block_fourier: {
            const int64_t L = left_dim, bs = block_dim;
            // Second register first.
            std::vector<cplx> tmp(in.size(), cplx{0.0, 0.0});
            for (int64_t i = 0; i < L; ++i)
                for (int64_t j = 0; j < bs; ++j) {
                    cplx acc{0.0, 0.0};
                    for (int64_t l = 0; l < bs; ++l)
                        acc += block[static_cast<size_t>(j * bs + l)] *
                               in[static_cast<size_t>(i * bs + l)];
                    tmp[static_cast<size_t>(i * bs + j)] = acc;
                }
            std::vector<cplx> res;
            if (left.empty()) {
                res = std::move(tmp);
            } else {
                res.assign(in.size(), cplx{0.0, 0.0});
                for (int64_t w = 0; w < L; ++w)
                    for (int64_t j = 0; j < bs; ++j) {
                        cplx acc{0.0, 0.0};
                        for (int64_t i = 0; i < L; ++i)
                            acc += left[static_cast<size_t>(w * L + i)] *
                                   tmp[static_cast<size_t>(i * bs + j)];
                        res[static_cast<size_t>(w * bs + j)] = acc;
                    }
            }
            if (!swap_registers) return res;
            std::vector<cplx> out(in.size());
            for (int64_t w = 0; w < L; ++w)
                for (int64_t j = 0; j < bs; ++j)
                    out[static_cast<size_t>(j * L + w)] = res[static_cast<size_t>(w * bs + j)];
            return out;
        }
        case Kind::dense:
            return dense.apply(in);
    }
    fail(ErrorCode::shape_error, "unknown stage kind");
}

CMatrix Stage::to_matrix() const {
    CMatrix m = CMatrix::zeros(dim);
    std::vector<cplx> e(static_cast<size_t>(dim), cplx{0.0, 0.0});
    for (int64_t c = 0; c < dim; ++c) {
        e[static_cast<size_t>(c)] = cplx{1.0, 0.0};
        std::vector<cplx> col = apply(e);
        for (int64_t r = 0; r < dim; ++r) m.at(r, c) = col[static_cast<size_t>(r)];
        e[static_cast<size_t>(c)] = cplx{0.0, 0.0};
    }
    return m;
}

std::vector<cplx> Pipeline::apply(const std::vector<cplx>& in) const {
    std::vector<cplx> state = in;
    for (const Stage& s : stages) state = s.apply(state);
    return state;
}

CMatrix Pipeline::compose_matrix() const {
    CMatrix m = CMatrix::zeros(dim);
    std::vector<cplx> e(static_cast<size_t>(dim), cplx{0.0, 0.0});
    for (int64_t c = 0; c < dim; ++c) {
        e[static_cast<size_t>(c)] = cplx{1.0, 0.0};
        std::vector<cplx> col = apply(e);
        for (int64_t r = 0; r < dim; ++r) m.at(r, c) = col[static_cast<size_t>(r)];
        e[static_cast<size_t>(c)] = cplx{0.0, 0.0};
    }
    return m;
}

Stage stage_pb(const CosetTables& tables) {
    const FiniteAbelianGroup& g = tables.subgroup.parent();
    const Subgroup& sub = tables.subgroup;
    const int64_t N = g.order();
    const int64_t Bn = sub.order();

    Stage s;
    s.kind = Stage::Kind::permutation;
    s.name = "coset-split";
    s.dim = N;
    s.perm.resize(static_cast<size_t>(N));
    for (int64_t a = 0; a < N; ++a) {
        int64_t x = tables.rep_of[static_cast<size_t>(a)];
        int64_t i = tables.t1_pos[static_cast<size_t>(x)];
        int64_t l = sub.element_position(g.sub_index(x, a));  // x_a - a lies in B
        s.perm[static_cast<size_t>(a)] = i * Bn + l;
    }
    return s;
}

Stage stage_fb(const CosetTables& tables) {
    const int64_t Bn = tables.subgroup.order();
    const int64_t T1 = tables.t1_size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(Bn));

    Stage s;
    s.kind = Stage::Kind::block_fourier;
    s.name = "subgroup-fourier";
    s.dim = T1 * Bn;
    s.left_dim = T1;
    s.block_dim = Bn;
    s.block.resize(static_cast<size_t>(Bn * Bn));
    for (int64_t j = 0; j < Bn; ++j)
        for (int64_t l = 0; l < Bn; ++l)
            s.block[static_cast<size_t>(j * Bn + l)] =
                scale * tables.restriction[static_cast<size_t>(j)][static_cast<size_t>(l)];
    return s;
}

Pipeline qzt_pipeline(const CosetTables& tables) {
    const int64_t N = tables.subgroup.parent().order();
    Pipeline p;
    p.dim = N;
    p.layouts.push_back({{{RegisterKind::element_of_a, N}}});
    p.stages.push_back(stage_pb(tables));
    p.layouts.push_back({{{RegisterKind::coset_rep_t1, tables.t1_size()},
                          {RegisterKind::element_of_b, tables.subgroup.order()}}});
    p.stages.push_back(stage_fb(tables));
    p.layouts.push_back({{{RegisterKind::coset_rep_t1, tables.t1_size()},
                          {RegisterKind::char_t2, tables.t2_size()}}});
    return p;
}

CMatrix direct_qzt_matrix(const CosetTables& tables) {
    const FiniteAbelianGroup& g = tables.subgroup.parent();
    const Subgroup& sub = tables.subgroup;
    const int64_t N = g.order();
    const int64_t Bn = sub.order();
    const double scale = 1.0 / std::sqrt(static_cast<double>(Bn));

    CMatrix m = CMatrix::zeros(N);
    for (int64_t a = 0; a < N; ++a) {
        int64_t x = tables.rep_of[static_cast<size_t>(a)];
        int64_t i = tables.t1_pos[static_cast<size_t>(x)];
        int64_t l = sub.element_position(g.sub_index(x, a));
        for (int64_t j = 0; j < Bn; ++j)
            m.at(i * Bn + j, a) =
                scale * tables.restriction[static_cast<size_t>(j)][static_cast<size_t>(l)];
    }
    return m;
}

Stage stage_phi(const Window& window) {
    if (!window.validated())
        fail(ErrorCode::invalid_window, "phase stage requires a validated window");
    const CosetTables& tables = window.lattice.tables;
    const int64_t T1 = tables.t1_size(), T2 = tables.t2_size();

    Stage s;
    s.kind = Stage::Kind::diagonal_phase;
    s.name = "window-phase";
    s.dim = T1 * T2;
    s.diag.resize(static_cast<size_t>(T1 * T2));
    for (int64_t i = 0; i < T1; ++i)
        for (int64_t j = 0; j < T2; ++j) {
            cplx gv = window.zak_g.values[static_cast<size_t>(i * T2 + j)];
            s.diag[static_cast<size_t>(i * T2 + j)] = std::polar(1.0, -std::arg(gv));
        }
    return s;
}

Stage stage_reinterpret(const IsomorphismPhi& phi, const CosetTables& tables) {
    const FiniteAbelianGroup& g = phi.group();
    const Subgroup& sub = phi.subgroup();
    const Subgroup& ann = tables.ann;
    const int64_t T1 = tables.t1_size(), T2 = tables.t2_size();
    const int64_t Bn = sub.order(), An = ann.order();

    Stage s;
    s.kind = Stage::Kind::permutation;
    s.name = "register-relabel";
    s.dim = T1 * T2;
    s.perm.resize(static_cast<size_t>(s.dim));

    // T1 position -> position of phi(x) in the sorted annihilator.
    std::vector<int64_t> first(static_cast<size_t>(T1));
    for (int64_t i = 0; i < T1; ++i) {
        DualElement u = phi.quot_to_ann(g.element(tables.t1[static_cast<size_t>(i)]));
        first[static_cast<size_t>(i)] = ann.element_position(u.flat());
    }
    // T2 position -> position of the matching subgroup element.  The j-th
    // representative restricts to the character labeled by its own
    // coordinates, so the element is bstar_to_b of that label.
    std::vector<int64_t> second(static_cast<size_t>(T2));
    for (int64_t j = 0; j < T2; ++j) {
        GroupElement label = phi.bstar_labels().make_element(
            g.coords_of(tables.t2[static_cast<size_t>(j)]));
        second[static_cast<size_t>(j)] = sub.element_position(phi.bstar_to_b(label).flat());
    }
    for (int64_t i = 0; i < T1; ++i)
        for (int64_t j = 0; j < T2; ++j)
            s.perm[static_cast<size_t>(i * T2 + j)] =
                first[static_cast<size_t>(i)] * Bn + second[static_cast<size_t>(j)];
    (void)An;
    return s;
}

Stage stage_f_delta(const IsomorphismPhi& phi, const CosetTables& tables) {
    const FiniteAbelianGroup& g = phi.group();
    const Subgroup& sub = phi.subgroup();
    const Subgroup& ann = tables.ann;
    const Coords& d = phi.subgroup().divisors();
    const Coords& m = phi.quotients();
    const int64_t Bn = sub.order(), An = ann.order();

    // Self-pairing of B_* through the quotient labels: for u = (m_j s_j) and
    // w = (m_j s'_j), E(u, w) = exp(2 pi i sum s_j s'_j / d_j).
    auto epair = [&](int64_t uf, int64_t wf) {
        Coords u = g.coords_of(uf), w = g.coords_of(wf);
        cplx v{1.0, 0.0};
        for (size_t j = 0; j < d.size(); ++j) {
            if (d[j] == 1) continue;
            int64_t s1 = u[j] / m[j], s2 = w[j] / m[j];
            v *= g.root(j, s1 * s2 * m[j]);  // exp(2 pi i s1 s2 / d_j)
        }
        return v;
    };
    // Self-pairing of B through the character labels: for v = (d_j k_j) and
    // b = (d_j k'_j), Theta(v, b) = exp(2 pi i sum k_j k'_j / m_j).
    auto tpair = [&](int64_t vf, int64_t bf) {
        Coords vv = g.coords_of(vf), bb = g.coords_of(bf);
        cplx v{1.0, 0.0};
        for (size_t j = 0; j < d.size(); ++j) {
            if (m[j] == 1) continue;
            int64_t k1 = vv[j] / d[j], k2 = bb[j] / d[j];
            v *= g.root(j, k1 * k2 * d[j]);  // exp(2 pi i k1 k2 / m_j)
        }
        return v;
    };

    Stage s;
    s.kind = Stage::Kind::block_fourier;
    s.name = "lattice-fourier";
    s.dim = An * Bn;
    s.left_dim = An;
    s.block_dim = Bn;
    s.swap_registers = true;

    const double lscale = 1.0 / std::sqrt(static_cast<double>(An));
    s.left.resize(static_cast<size_t>(An * An));
    for (int64_t w = 0; w < An; ++w)
        for (int64_t u = 0; u < An; ++u)
            s.left[static_cast<size_t>(w * An + u)] =
                lscale * std::conj(epair(ann.elements()[static_cast<size_t>(u)],
                                         ann.elements()[static_cast<size_t>(w)]));

    const double bscale = 1.0 / std::sqrt(static_cast<double>(Bn));
    s.block.resize(static_cast<size_t>(Bn * Bn));
    for (int64_t b = 0; b < Bn; ++b)
        for (int64_t v = 0; v < Bn; ++v)
            s.block[static_cast<size_t>(b * Bn + v)] =
                bscale * tpair(sub.elements()[static_cast<size_t>(v)],
                               sub.elements()[static_cast<size_t>(b)]);
    return s;
}

Pipeline qwht_pipeline(const Window& window, const IsomorphismPhi& phi) {
    const CosetTables& tables = window.lattice.tables;
    if (phi.subgroup().elements() != window.lattice.subgroup.elements() ||
        phi.group() != window.g.group)
        fail(ErrorCode::domain_mismatch, "isomorphism and window disagree on the subgroup");

    Pipeline p = qzt_pipeline(tables);
    p.stages.push_back(stage_phi(window));
    p.layouts.push_back(p.layouts.back());
    p.stages.push_back(stage_reinterpret(phi, tables));
    p.layouts.push_back({{{RegisterKind::element_of_bstar, tables.ann.order()},
                          {RegisterKind::element_of_b, window.lattice.subgroup.order()}}});
    p.stages.push_back(stage_f_delta(phi, tables));
    p.layouts.push_back({{{RegisterKind::element_of_b, window.lattice.subgroup.order()},
                          {RegisterKind::element_of_bstar, tables.ann.order()}}});
    return p;
}

CMatrix direct_qwht_matrix(const Window& window) {
    if (!window.validated())
        fail(ErrorCode::invalid_window, "transform requires a validated window");
    const FiniteAbelianGroup& g = window.g.group;
    const int64_t N = g.order();
    CMatrix m = CMatrix::zeros(N);
    for (size_t dpos = 0; dpos < window.lattice.delta.size(); ++dpos) {
        const auto& [b, bs] = window.lattice.delta[dpos];
        Signal t = tf_translate(window.g, g.element(b), g.dual_element(bs));
        for (int64_t a = 0; a < N; ++a)
            m.at(static_cast<int64_t>(dpos), a) = std::conj(t.values[static_cast<size_t>(a)]);
    }
    return m;
}

namespace {

std::vector<int64_t> compose_pair_perm(const std::vector<int64_t>& first,
                                       const std::vector<int64_t>& second) {
    const int64_t n1 = static_cast<int64_t>(first.size());
    const int64_t n2 = static_cast<int64_t>(second.size());
    std::vector<int64_t> perm(static_cast<size_t>(n1 * n2));
    for (int64_t i = 0; i < n1; ++i)
        for (int64_t j = 0; j < n2; ++j)
            perm[static_cast<size_t>(i * n2 + j)] =
                first[static_cast<size_t>(i)] * n2 + second[static_cast<size_t>(j)];
    return perm;
}

std::vector<int64_t> identity_perm(int64_t n) {
    std::vector<int64_t> p(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    return p;
}

}  // namespace

std::vector<RowRelabeling> qzt_row_relabelings(const CosetTables& tables) {
    const FiniteAbelianGroup& g = tables.subgroup.parent();
    const int64_t T1 = tables.t1_size(), T2 = tables.t2_size();

    // Negation on a transversal: x -> representative of -x.
    std::vector<int64_t> neg1(static_cast<size_t>(T1)), neg2(static_cast<size_t>(T2));
    for (int64_t i = 0; i < T1; ++i) {
        int64_t nx = tables.rep_of[static_cast<size_t>(
            g.neg_index(tables.t1[static_cast<size_t>(i)]))];
        neg1[static_cast<size_t>(i)] = tables.t1_pos[static_cast<size_t>(nx)];
    }
    for (int64_t j = 0; j < T2; ++j) {
        int64_t nt = tables.dual_rep_of[static_cast<size_t>(
            g.neg_index(tables.t2[static_cast<size_t>(j)]))];
        neg2[static_cast<size_t>(j)] = tables.t2_pos[static_cast<size_t>(nt)];
    }
    std::vector<RowRelabeling> out;
    out.push_back({"negate-rep", compose_pair_perm(neg1, identity_perm(T2))});
    out.push_back({"negate-char", compose_pair_perm(identity_perm(T1), neg2)});
    out.push_back({"negate-both", compose_pair_perm(neg1, neg2)});
    return out;
}

std::vector<RowRelabeling> qwht_row_relabelings(const CosetTables& tables) {
    const FiniteAbelianGroup& g = tables.subgroup.parent();
    const Subgroup& sub = tables.subgroup;
    const Subgroup& ann = tables.ann;
    const int64_t Bn = sub.order(), An = ann.order();

    std::vector<int64_t> negb(static_cast<size_t>(Bn)), negbs(static_cast<size_t>(An));
    for (int64_t l = 0; l < Bn; ++l)
        negb[static_cast<size_t>(l)] =
            sub.element_position(g.neg_index(sub.elements()[static_cast<size_t>(l)]));
    for (int64_t l = 0; l < An; ++l)
        negbs[static_cast<size_t>(l)] =
            ann.element_position(g.neg_index(ann.elements()[static_cast<size_t>(l)]));
    std::vector<RowRelabeling> out;
    out.push_back({"negate-shift", compose_pair_perm(negb, identity_perm(An))});
    out.push_back({"negate-modulation", compose_pair_perm(identity_perm(Bn), negbs)});
    out.push_back({"negate-both", compose_pair_perm(negb, negbs)});
    return out;
}

EquivalenceReport verify_equivalence(const Pipeline& pipeline, const CMatrix& direct,
                                     double tol, const std::vector<RowRelabeling>& relabelings) {
    CMatrix composed = pipeline.compose_matrix();
    if (composed.dim != direct.dim)
        fail(ErrorCode::shape_error, "pipeline and direct transform dimensions differ");

    EquivalenceReport r;
    r.max_dev = max_abs_diff(composed.a, direct.a);
    r.pass = r.max_dev <= tol;
    r.best_name = "canonical";
    r.best_dev = r.max_dev;
    if (r.pass) return r;

    for (const RowRelabeling& rl : relabelings) {
        double worst = 0.0;
        for (int64_t row = 0; row < direct.dim; ++row) {
            int64_t target = rl.perm[static_cast<size_t>(row)];
            for (int64_t c = 0; c < direct.dim; ++c)
                worst = std::max(worst, std::abs(composed.at(target, c) - direct.at(row, c)));
            if (worst > r.best_dev) break;
        }
        if (worst < r.best_dev) {
            r.best_dev = worst;
            r.best_name = rl.name;
        }
    }
    return r;
}

}  // namespace tfq
