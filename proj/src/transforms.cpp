#include "tfq/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tfq {

double Signal::norm() const {
    double s = 0.0;
    for (const cplx& v : values) s += std::norm(v);
    return std::sqrt(s);
}

Signal Signal::zeros(const FiniteAbelianGroup& g) {
    return Signal{g, std::vector<cplx>(static_cast<size_t>(g.order()), cplx{0.0, 0.0})};
}

Signal Signal::basis(const FiniteAbelianGroup& g, int64_t flat) {
    Signal s = zeros(g);
    s.values.at(static_cast<size_t>(flat)) = cplx{1.0, 0.0};
    return s;
}

namespace {

void check_signal(const Signal& f) {
    if (f.values.size() != static_cast<size_t>(f.group.order()))
        fail(ErrorCode::shape_error, "signal length does not match group order");
}

int64_t smallest_factor(int64_t n) {
    for (int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

// Recursive Cooley-Tukey step over the smallest prime factor; prime sizes
// fall back to the quadratic sum.  `w` holds exp(sign*2*pi*i*t/n_top) and
// `tw` is n_top / n_cur, so twiddles index the shared table exactly.
void dft1d_rec(const cplx* in, int64_t stride, cplx* out, int64_t n_cur,
               const std::vector<cplx>& w, int64_t n_top, int64_t tw) {
    if (n_cur == 1) {
        out[0] = in[0];
        return;
    }
    int64_t p = smallest_factor(n_cur);
    if (p == n_cur) {
        for (int64_t k = 0; k < n_cur; ++k) {
            cplx acc{0.0, 0.0};
            for (int64_t j = 0; j < n_cur; ++j)
                acc += w[static_cast<size_t>((j * k % n_cur) * tw)] * in[j * stride];
            out[k] = acc;
        }
        return;
    }
    int64_t m = n_cur / p;
    std::vector<cplx> sub(static_cast<size_t>(n_cur));
    for (int64_t r = 0; r < p; ++r)
        dft1d_rec(in + r * stride, stride * p, sub.data() + r * m, m, w, n_top, tw * p);
    for (int64_t k = 0; k < n_cur; ++k) {
        cplx acc{0.0, 0.0};
        int64_t q = k % m;
        for (int64_t r = 0; r < p; ++r)
            acc += w[static_cast<size_t>(r * k % n_cur * tw)] * sub[static_cast<size_t>(r * m + q)];
        out[k] = acc;
    }
}

}  // namespace

void dft_mixed_radix(std::vector<cplx>& data, const Coords& moduli, int sign) {
    int64_t total = 1;
    for (int64_t n : moduli) total *= n;
    if (data.size() != static_cast<size_t>(total))
        fail(ErrorCode::shape_error, "data length does not match mixed-radix layout");

    int64_t stride = total;
    for (size_t axis = 0; axis < moduli.size(); ++axis) {
        int64_t n = moduli[axis];
        stride /= n;
        if (n == 1) continue;
        std::vector<cplx> w(static_cast<size_t>(n));
        for (int64_t t = 0; t < n; ++t)
            w[static_cast<size_t>(t)] = std::polar(
                1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n));
        std::vector<cplx> line(static_cast<size_t>(n)), lout(static_cast<size_t>(n));
        int64_t blocks = total / (n * stride);
        for (int64_t blk = 0; blk < blocks; ++blk) {
            for (int64_t inner = 0; inner < stride; ++inner) {
                int64_t base = blk * n * stride + inner;
                for (int64_t t = 0; t < n; ++t)
                    line[static_cast<size_t>(t)] = data[static_cast<size_t>(base + t * stride)];
                dft1d_rec(line.data(), 1, lout.data(), n, w, n, 1);
                for (int64_t t = 0; t < n; ++t)
                    data[static_cast<size_t>(base + t * stride)] = lout[static_cast<size_t>(t)];
            }
        }
    }
}

Signal fourier(const Signal& f) {
    check_signal(f);
    const FiniteAbelianGroup& g = f.group;
    const Coords& n = g.moduli();
    const int64_t N = g.order();
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    Signal out = Signal::zeros(g);
    Coords k(n.size(), 0);
    for (int64_t ks = 0; ks < N; ++ks) {
        cplx acc{0.0, 0.0};
        Coords a(n.size(), 0);
        for (int64_t ai = 0; ai < N; ++ai) {
            cplx kernel{1.0, 0.0};
            for (size_t j = 0; j < n.size(); ++j)
                kernel *= g.root(j, -(k[j] * a[j]));
            acc += kernel * f.values[static_cast<size_t>(ai)];
            for (size_t j = n.size(); j-- > 0;) {
                if (++a[j] < n[j]) break;
                a[j] = 0;
            }
        }
        out.values[static_cast<size_t>(ks)] = scale * acc;
        for (size_t j = n.size(); j-- > 0;) {
            if (++k[j] < n[j]) break;
            k[j] = 0;
        }
    }
    return out;
}

Signal fourier_fast(const Signal& f) {
    check_signal(f);
    Signal out = f;
    dft_mixed_radix(out.values, f.group.moduli(), -1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(f.group.order()));
    for (cplx& v : out.values) v *= scale;
    return out;
}

Signal inverse_fourier(const Signal& fhat) {
    check_signal(fhat);
    Signal out = fhat;
    dft_mixed_radix(out.values, fhat.group.moduli(), +1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(fhat.group.order()));
    for (cplx& v : out.values) v *= scale;
    return out;
}

ZakArray zak_direct(const Signal& f, const Subgroup& sub) {
    check_signal(f);
    const FiniteAbelianGroup& g = f.group;
    if (sub.parent() != g)
        fail(ErrorCode::domain_mismatch, "subgroup belongs to a different group");
    const int64_t N = g.order();
    const auto& elems = sub.elements();
    const size_t Bn = elems.size();

    // Precomputed translate tables keep the triple loop to pure lookups.
    std::vector<std::vector<int64_t>> shift(Bn);
    for (size_t l = 0; l < Bn; ++l) {
        shift[l].resize(static_cast<size_t>(N));
        for (int64_t a = 0; a < N; ++a)
            shift[l][static_cast<size_t>(a)] = g.add_index(a, elems[l]);
    }
    std::vector<std::vector<cplx>> kernel(static_cast<size_t>(N));
    for (int64_t as = 0; as < N; ++as) {
        DualElement chi = g.dual_element(as);
        kernel[static_cast<size_t>(as)].resize(Bn);
        for (size_t l = 0; l < Bn; ++l)
            kernel[static_cast<size_t>(as)][l] = std::conj(char_eval(chi, g.element(elems[l])));
    }

    ZakArray z;
    z.subgroup = sub;
    z.domain = ZakDomain::full;
    z.values.assign(static_cast<size_t>(N * N), cplx{0.0, 0.0});
    for (int64_t a = 0; a < N; ++a) {
        for (int64_t as = 0; as < N; ++as) {
            cplx acc{0.0, 0.0};
            for (size_t l = 0; l < Bn; ++l)
                acc += f.values[static_cast<size_t>(shift[l][static_cast<size_t>(a)])] *
                       kernel[static_cast<size_t>(as)][l];
            z.values[static_cast<size_t>(a * N + as)] = acc;
        }
    }
    return z;
}

ZakArray zak_fast(const Signal& f, const Subgroup& sub) {
    check_signal(f);
    const FiniteAbelianGroup& g = f.group;
    if (sub.parent() != g)
        fail(ErrorCode::domain_mismatch, "subgroup belongs to a different group");
    CosetTables tables = coset_tables(sub);
    const int64_t T1 = tables.t1_size(), T2 = tables.t2_size();

    ZakArray z;
    z.subgroup = sub;
    z.domain = ZakDomain::restricted_t;
    z.values.assign(static_cast<size_t>(T1 * T2), cplx{0.0, 0.0});

    if (sub.aligned()) {
        // For an aligned subgroup the fiber f(x + .) over B is a mixed-radix
        // array with axes n_j/d_j, and the T2 sum is its multi-dimensional
        // DFT with conjugated kernel: chi_{t2}(b) on the transversal grid is
        // exactly the product kernel over those axes.
        Coords quotients(g.factors());
        for (size_t j = 0; j < g.factors(); ++j)
            quotients[j] = g.moduli()[j] / sub.divisors()[j];
        std::vector<cplx> fiber(static_cast<size_t>(sub.order()));
        for (int64_t i = 0; i < T1; ++i) {
            int64_t x = tables.t1[static_cast<size_t>(i)];
            for (int64_t l = 0; l < sub.order(); ++l)
                fiber[static_cast<size_t>(l)] =
                    f.values[static_cast<size_t>(g.add_index(x, sub.elements()[static_cast<size_t>(l)]))];
            dft_mixed_radix(fiber, quotients, -1);
            for (int64_t j = 0; j < T2; ++j)
                z.values[static_cast<size_t>(i * T2 + j)] = fiber[static_cast<size_t>(j)];
        }
        return z;
    }

    // Generated subgroups: evaluate the defining sum on the transversal grid.
    for (int64_t i = 0; i < T1; ++i) {
        int64_t x = tables.t1[static_cast<size_t>(i)];
        for (int64_t j = 0; j < T2; ++j) {
            cplx acc{0.0, 0.0};
            for (int64_t l = 0; l < sub.order(); ++l)
                acc += f.values[static_cast<size_t>(
                           g.add_index(x, sub.elements()[static_cast<size_t>(l)]))] *
                       std::conj(tables.restriction[static_cast<size_t>(j)][static_cast<size_t>(l)]);
            z.values[static_cast<size_t>(i * T2 + j)] = acc;
        }
    }
    return z;
}

ZakArray restrict_to_t(const ZakArray& zak, const CosetTables& tables) {
    if (zak.domain == ZakDomain::restricted_t) return zak;
    const FiniteAbelianGroup& g = zak.subgroup.parent();
    const int64_t N = g.order();
    if (zak.values.size() != static_cast<size_t>(N * N))
        fail(ErrorCode::shape_error, "full Zak table has wrong size");
    const int64_t T1 = tables.t1_size(), T2 = tables.t2_size();
    ZakArray out;
    out.subgroup = zak.subgroup;
    out.domain = ZakDomain::restricted_t;
    out.values.resize(static_cast<size_t>(T1 * T2));
    for (int64_t i = 0; i < T1; ++i)
        for (int64_t j = 0; j < T2; ++j)
            out.values[static_cast<size_t>(i * T2 + j)] =
                zak.values[static_cast<size_t>(tables.t1[static_cast<size_t>(i)] * N +
                                               tables.t2[static_cast<size_t>(j)])];
    return out;
}

ZakArray extend_from_t(const ZakArray& zak, const CosetTables& tables) {
    if (zak.domain == ZakDomain::full) return zak;
    const FiniteAbelianGroup& g = zak.subgroup.parent();
    const Subgroup& sub = zak.subgroup;
    const int64_t N = g.order();
    const int64_t T2 = tables.t2_size();
    if (zak.values.size() != static_cast<size_t>(N))
        fail(ErrorCode::shape_error, "restricted Zak table has wrong size");

    ZakArray out;
    out.subgroup = sub;
    out.domain = ZakDomain::full;
    out.values.resize(static_cast<size_t>(N * N));
    // F(a, a*) = chi_t(a - x) F(x, t) with x = rep(a), t = rep(a*); the
    // character value comes from the stored restriction row of t.
    for (int64_t a = 0; a < N; ++a) {
        int64_t x = tables.rep_of[static_cast<size_t>(a)];
        int64_t i = tables.t1_pos[static_cast<size_t>(x)];
        int64_t b0 = g.sub_index(a, x);
        int64_t l = sub.element_position(b0);
        for (int64_t as = 0; as < N; ++as) {
            int64_t t = tables.dual_rep_of[static_cast<size_t>(as)];
            int64_t j = tables.t2_pos[static_cast<size_t>(t)];
            out.values[static_cast<size_t>(a * N + as)] =
                tables.restriction[static_cast<size_t>(j)][static_cast<size_t>(l)] *
                zak.values[static_cast<size_t>(i * T2 + j)];
        }
    }
    return out;
}

ZakArray extend_from_t(const ZakArray& zak) {
    if (zak.domain == ZakDomain::full) return zak;
    return extend_from_t(zak, coset_tables(zak.subgroup));
}

Signal inverse_zak(const ZakArray& zak, const CosetTables& tables) {
    const FiniteAbelianGroup& g = zak.subgroup.parent();
    const Subgroup& sub = zak.subgroup;
    const int64_t N = g.order();
    const int64_t T2 = tables.t2_size();
    const double scale = 1.0 / static_cast<double>(sub.order());

    Signal f = Signal::zeros(g);
    if (zak.domain == ZakDomain::full) {
        if (zak.values.size() != static_cast<size_t>(N * N))
            fail(ErrorCode::shape_error, "full Zak table has wrong size");
        for (int64_t a = 0; a < N; ++a) {
            cplx acc{0.0, 0.0};
            for (int64_t j = 0; j < T2; ++j)
                acc += zak.values[static_cast<size_t>(a * N + tables.t2[static_cast<size_t>(j)])];
            f.values[static_cast<size_t>(a)] = scale * acc;
        }
        return f;
    }

    if (zak.values.size() != static_cast<size_t>(N))
        fail(ErrorCode::shape_error, "restricted Zak table has wrong size");
    for (int64_t a = 0; a < N; ++a) {
        int64_t x = tables.rep_of[static_cast<size_t>(a)];
        int64_t i = tables.t1_pos[static_cast<size_t>(x)];
        int64_t l = sub.element_position(g.sub_index(a, x));
        cplx acc{0.0, 0.0};
        for (int64_t j = 0; j < T2; ++j)
            acc += tables.restriction[static_cast<size_t>(j)][static_cast<size_t>(l)] *
                   zak.values[static_cast<size_t>(i * T2 + j)];
        f.values[static_cast<size_t>(a)] = scale * acc;
    }
    return f;
}

Signal inverse_zak(const ZakArray& zak) {
    return inverse_zak(zak, coset_tables(zak.subgroup));
}

}  // namespace tfq
