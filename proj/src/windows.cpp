#include "tfq/windows.hpp"

#include <cmath>

namespace tfq {

Lattice make_lattice(const Subgroup& sub) {
    Lattice lat;
    lat.subgroup = sub;
    lat.tables = coset_tables(sub);
    lat.ann = lat.tables.ann;
    lat.delta.reserve(static_cast<size_t>(sub.order() * lat.ann.order()));
    for (int64_t b : sub.elements())
        for (int64_t bs : lat.ann.elements())
            lat.delta.emplace_back(b, bs);
    return lat;
}

Signal tf_translate(const Signal& g, const GroupElement& x, const DualElement& x_star) {
    const FiniteAbelianGroup& grp = g.group;
    if (x.group() != grp || x_star.group() != grp)
        fail(ErrorCode::domain_mismatch, "translate parameters belong to a different group");
    if (g.values.size() != static_cast<size_t>(grp.order()))
        fail(ErrorCode::shape_error, "signal length does not match group order");
    Signal out = Signal::zeros(grp);
    const int64_t N = grp.order();
    const int64_t xf = x.flat();
    for (int64_t a = 0; a < N; ++a) {
        GroupElement ae = grp.element(a);
        out.values[static_cast<size_t>(a)] =
            g.values[static_cast<size_t>(grp.sub_index(a, xf))] * char_eval(x_star, ae);
    }
    return out;
}

Window check_window(const Signal& g, const Subgroup& sub, double tol) {
    if (g.group != sub.parent())
        fail(ErrorCode::domain_mismatch, "window and subgroup belong to different groups");
    if (g.values.size() != static_cast<size_t>(g.group.order()))
        fail(ErrorCode::shape_error, "signal length does not match group order");
    if (std::abs(g.norm() - 1.0) > tol)
        fail(ErrorCode::invalid_window, "window must have unit norm");

    Window w;
    w.g = g;
    w.lattice = make_lattice(sub);
    w.tol = tol;

    const double target = std::sqrt(static_cast<double>(sub.order()) /
                                    static_cast<double>(g.group.order()));
    // The modulus is constant along quasi-periodic orbits, but the criterion
    // is stated over the whole table, so evaluate all of it.
    ZakArray full = zak_direct(g, sub);
    double worst = 0.0;
    for (const cplx& v : full.values)
        worst = std::max(worst, std::abs(std::abs(v) - target));
    w.max_deviation = worst;
    w.status = worst <= tol ? WindowStatus::validated_orthonormal : WindowStatus::invalid;
    w.zak_g = restrict_to_t(full, w.lattice.tables);
    return w;
}

Window window_from_phases(const std::vector<double>& theta, const Subgroup& sub, double tol) {
    const FiniteAbelianGroup& grp = sub.parent();
    if (theta.size() != static_cast<size_t>(grp.order()))
        fail(ErrorCode::shape_error, "need one phase per transversal grid point");
    CosetTables tables = coset_tables(sub);
    const double target = std::sqrt(static_cast<double>(sub.order()) /
                                    static_cast<double>(grp.order()));
    ZakArray zak;
    zak.subgroup = sub;
    zak.domain = ZakDomain::restricted_t;
    zak.values.reserve(theta.size());
    for (double th : theta) zak.values.push_back(std::polar(target, th));
    Signal g = inverse_zak(zak, tables);
    // Unit norm follows from the Zak isometry; the round trip through
    // check_window also pins the Zak table back onto the prescribed phases.
    Window w = check_window(g, sub, tol);
    if (!w.validated())
        fail(ErrorCode::invalid_window, "phase construction failed to validate");
    return w;
}

namespace {

std::vector<Signal> lattice_translates(const Window& window) {
    const FiniteAbelianGroup& grp = window.g.group;
    std::vector<Signal> out;
    out.reserve(window.lattice.delta.size());
    for (const auto& [b, bs] : window.lattice.delta)
        out.push_back(tf_translate(window.g, grp.element(b), grp.dual_element(bs)));
    return out;
}

}  // namespace

WHCoefficients wh_analyze(const Signal& f, const Window& window) {
    if (!window.validated())
        fail(ErrorCode::invalid_window, "analysis requires a validated window");
    if (f.group != window.g.group)
        fail(ErrorCode::domain_mismatch, "signal and window belong to different groups");
    if (f.values.size() != static_cast<size_t>(f.group.order()))
        fail(ErrorCode::shape_error, "signal length does not match group order");

    std::vector<Signal> translates = lattice_translates(window);
    WHCoefficients alpha;
    alpha.subgroup = window.lattice.subgroup;
    alpha.values.reserve(translates.size());
    for (const Signal& t : translates) {
        cplx acc{0.0, 0.0};
        for (size_t a = 0; a < f.values.size(); ++a)
            acc += std::conj(t.values[a]) * f.values[a];
        alpha.values.push_back(acc);
    }
    return alpha;
}

Signal wh_synthesize(const WHCoefficients& alpha, const Window& window) {
    if (!window.validated())
        fail(ErrorCode::invalid_window, "synthesis requires a validated window");
    if (alpha.values.size() != window.lattice.delta.size())
        fail(ErrorCode::shape_error, "coefficient count does not match lattice size");
    std::vector<Signal> translates = lattice_translates(window);
    Signal f = Signal::zeros(window.g.group);
    for (size_t d = 0; d < translates.size(); ++d)
        for (size_t a = 0; a < f.values.size(); ++a)
            f.values[a] += alpha.values[d] * translates[d].values[a];
    return f;
}

PeriodicCorrelation periodic_correlation(const WHCoefficients& alpha, const Lattice& lattice) {
    if (alpha.values.size() != lattice.delta.size())
        fail(ErrorCode::shape_error, "coefficient count does not match lattice size");
    const FiniteAbelianGroup& grp = lattice.subgroup.parent();
    const int64_t N = grp.order();
    PeriodicCorrelation p;
    p.group = grp;
    p.values.assign(static_cast<size_t>(N * N), cplx{0.0, 0.0});
    // chi_{b_*}(a) and conj(chi_{a*}(b)) rows, precomputed per lattice point.
    for (size_t d = 0; d < lattice.delta.size(); ++d) {
        const auto& [b, bs] = lattice.delta[d];
        GroupElement be = grp.element(b);
        DualElement bse = grp.dual_element(bs);
        std::vector<cplx> mod(static_cast<size_t>(N)), shift(static_cast<size_t>(N));
        for (int64_t a = 0; a < N; ++a)
            mod[static_cast<size_t>(a)] = char_eval(bse, grp.element(a));
        for (int64_t as = 0; as < N; ++as)
            shift[static_cast<size_t>(as)] = std::conj(char_eval(grp.dual_element(as), be));
        const cplx c = alpha.values[d];
        for (int64_t a = 0; a < N; ++a)
            for (int64_t as = 0; as < N; ++as)
                p.values[static_cast<size_t>(a * N + as)] +=
                    c * mod[static_cast<size_t>(a)] * shift[static_cast<size_t>(as)];
    }
    return p;
}

double verify_fgp(const Signal& f, const Window& window) {
    WHCoefficients alpha = wh_analyze(f, window);
    PeriodicCorrelation p = periodic_correlation(alpha, window.lattice);
    ZakArray F = zak_direct(f, window.lattice.subgroup);
    ZakArray G = extend_from_t(window.zak_g, window.lattice.tables);
    double worst = 0.0;
    for (size_t i = 0; i < F.values.size(); ++i)
        worst = std::max(worst, std::abs(F.values[i] - G.values[i] * p.values[i]));
    return worst;
}

std::vector<cplx> gram_matrix(const Window& window) {
    std::vector<Signal> translates = lattice_translates(window);
    const size_t D = translates.size();
    std::vector<cplx> gram(D * D);
    for (size_t r = 0; r < D; ++r)
        for (size_t c = 0; c < D; ++c) {
            cplx acc{0.0, 0.0};
            for (size_t a = 0; a < translates[r].values.size(); ++a)
                acc += std::conj(translates[r].values[a]) * translates[c].values[a];
            gram[r * D + c] = acc;
        }
    return gram;
}

}  // namespace tfq
