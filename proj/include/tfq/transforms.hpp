#pragma once

#include <vector>

#include "tfq/group.hpp"

namespace tfq {

// Complex-valued function on a group, indexed by the flat element order.
struct Signal {
    FiniteAbelianGroup group;
    std::vector<cplx> values;

    double norm() const;

    static Signal zeros(const FiniteAbelianGroup& g);
    static Signal basis(const FiniteAbelianGroup& g, int64_t flat);  // impulse
};

enum class ZakDomain { full, restricted_t };

// Zak table of a signal with respect to a subgroup B:
//   F(a, a*) = sum_{b in B} f(a + b) conj(chi_{a*}(b))
// full:          |A| x |A*| values, row index a, column index a*
// restricted_t:  |T1| x |T2| values on the transversal grid; the full table
//                is recovered through F(x + b, t + b_*) = chi_t(b) F(x, t).
struct ZakArray {
    Subgroup subgroup;
    ZakDomain domain = ZakDomain::full;
    std::vector<cplx> values;
};

// Unitary Fourier transform, f^(a*) = (1/sqrt|A|) sum_a conj(chi_{a*}(a)) f(a).
// The inner-product reading is f^(a*) = <chi_{a*}, f> with the first slot
// conjugated.  fourier() is the dense reference evaluation; fourier_fast()
// runs a mixed-radix factor-by-factor reduction and must agree to 1e-10.
Signal fourier(const Signal& f);
Signal fourier_fast(const Signal& f);

Signal inverse_fourier(const Signal& fhat);

ZakArray zak_direct(const Signal& f, const Subgroup& sub);   // full table
ZakArray zak_fast(const Signal& f, const Subgroup& sub);     // restricted table

ZakArray restrict_to_t(const ZakArray& zak, const CosetTables& tables);
ZakArray extend_from_t(const ZakArray& zak, const CosetTables& tables);
ZakArray extend_from_t(const ZakArray& zak);

// f(a) = (1/|B|) sum_{t in T2} F(a, t); accepts either domain.
Signal inverse_zak(const ZakArray& zak, const CosetTables& tables);
Signal inverse_zak(const ZakArray& zak);

// In-place unnormalized multi-dimensional DFT over a mixed-radix layout
// (last axis fastest).  sign = -1 conjugates the kernel (the analysis
// direction used by fourier and zak), sign = +1 is the synthesis direction.
void dft_mixed_radix(std::vector<cplx>& data, const Coords& moduli, int sign);

}  // namespace tfq
