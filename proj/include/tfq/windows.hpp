#pragma once

#include <vector>

#include "tfq/transforms.hpp"

namespace tfq {

// Time-frequency lattice Delta = B x B_* attached to a subgroup B.  The pair
// list enumerates (b, b_*) with b major, both factors in ascending flat
// order; every coefficient table below follows this order.
struct Lattice {
    Subgroup subgroup;                              // B
    Subgroup ann;                                   // B_*
    CosetTables tables;
    std::vector<std::pair<int64_t, int64_t>> delta; // (flat b, flat b_*)
};

Lattice make_lattice(const Subgroup& sub);

// g_(x, x*)(a) = g(a - x) chi_{x*}(a): translate in time by x, modulate by x*.
Signal tf_translate(const Signal& g, const GroupElement& x, const DualElement& x_star);

enum class WindowStatus { validated_orthonormal, invalid };

// Candidate window together with its Zak table on the transversal grid.
// status records whether |G(a, a*)| = sqrt(|B|/|A|) held everywhere within
// the tolerance used at construction; max_deviation is the worst offset.
struct Window {
    Signal g;
    Lattice lattice;
    ZakArray zak_g;          // restricted_t domain
    WindowStatus status = WindowStatus::invalid;
    double max_deviation = 0.0;
    double tol = 0.0;

    bool validated() const { return status == WindowStatus::validated_orthonormal; }
};

// Evaluates the constant-modulus criterion over the full Zak table of g.
// Requires unit norm (within tol); that failure is an error, a failed
// modulus criterion is a regular invalid result.
Window check_window(const Signal& g, const Subgroup& sub, double tol = 1e-8);

// Builds the window whose Zak table on the transversal grid is
// sqrt(|B|/|A|) e^{i theta_i}, theta given in T1-major T2-minor order.
// The result always validates; construction re-checks it.
Window window_from_phases(const std::vector<double>& theta, const Subgroup& sub,
                          double tol = 1e-8);

// Coefficients alpha(b, b_*) in lattice order.
struct WHCoefficients {
    Subgroup subgroup;
    std::vector<cplx> values;
};

// alpha(b, b_*) = <g_(b, b_*), f> = sum_a conj(g_(b, b_*)(a)) f(a).
// The window must be validated.
WHCoefficients wh_analyze(const Signal& f, const Window& window);

// f = sum alpha(b, b_*) g_(b, b_*).
Signal wh_synthesize(const WHCoefficients& alpha, const Window& window);

// P(a, a*) = sum_{(b, b_*)} alpha(b, b_*) chi_{b_*}(a) conj(chi_{a*}(b)),
// a |A| x |A*| table, periodic under translation by Delta.
struct PeriodicCorrelation {
    FiniteAbelianGroup group;
    std::vector<cplx> values;
};

PeriodicCorrelation periodic_correlation(const WHCoefficients& alpha, const Lattice& lattice);

// Residual max |F - G P| over A x A* where F, G are the Zak tables of f and
// the window and P the correlation of f's coefficients.
double verify_fgp(const Signal& f, const Window& window);

// Gram matrix of the translate system {g_(b, b_*)}, |Delta|^2 entries in
// lattice order.  Defined for any unit-norm g, validated or not.
std::vector<cplx> gram_matrix(const Window& window);

}  // namespace tfq
