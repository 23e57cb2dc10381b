#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfq/windows.hpp"

namespace tfq {

// Square complex matrix, row-major.
struct CMatrix {
    int64_t dim = 0;
    std::vector<cplx> a;

    static CMatrix zeros(int64_t n) {
        return CMatrix{n, std::vector<cplx>(static_cast<size_t>(n * n), cplx{0.0, 0.0})};
    }
    static CMatrix identity(int64_t n);

    cplx& at(int64_t r, int64_t c) { return a[static_cast<size_t>(r * dim + c)]; }
    const cplx& at(int64_t r, int64_t c) const { return a[static_cast<size_t>(r * dim + c)]; }

    std::vector<cplx> apply(const std::vector<cplx>& v) const;
    CMatrix multiply(const CMatrix& rhs) const;

    // max |(U* U - I)_{rc}|
    double unitarity_defect() const;
};

double max_abs_diff(const std::vector<cplx>& x, const std::vector<cplx>& y);

// What a register's basis indices mean at a given pipeline point.
enum class RegisterKind {
    element_of_a,     // basis |a>, flat element order
    coset_rep_t1,     // T1 position
    element_of_b,     // position in the sorted subgroup
    char_t2,          // T2 position; equivalently a character of B by restriction
    element_of_bstar, // position in the sorted annihilator
};

struct RegisterLayout {
    struct Register {
        RegisterKind kind;
        int64_t dim;
    };
    std::vector<Register> registers;  // flat index is register-0 major

    int64_t total_dim() const {
        int64_t d = 1;
        for (const auto& r : registers) d *= r.dim;
        return d;
    }
};

std::string register_kind_name(RegisterKind k);

// One unitary pipeline stage.  Three structured kinds plus a dense escape
// hatch; apply() never materializes the matrix for the structured kinds.
//
// block_fourier covers both per-register transform stages: an optional
// transform on the first register, a mandatory one on the second, and an
// optional output register swap.  A plain subgroup-Fourier stage leaves the
// first register alone; the closing lattice stage transforms both registers
// and swaps them.
struct Stage {
    enum class Kind { permutation, diagonal_phase, block_fourier, dense };

    Kind kind = Kind::dense;
    std::string name;
    int64_t dim = 0;

    std::vector<int64_t> perm;        // permutation: out[perm[i]] = in[i]
    std::vector<cplx> diag;           // diagonal_phase

    int64_t left_dim = 0;             // block_fourier register dims
    int64_t block_dim = 0;
    std::vector<cplx> left;           // left_dim x left_dim, empty = identity
    std::vector<cplx> block;          // block_dim x block_dim
    bool swap_registers = false;

    CMatrix dense;                    // dense

    std::vector<cplx> apply(const std::vector<cplx>& in) const;
    CMatrix to_matrix() const;
};

struct Pipeline {
    int64_t dim = 0;
    std::vector<Stage> stages;
    std::vector<RegisterLayout> layouts;  // layouts[i] before stage i; size stages+1

    std::vector<cplx> apply(const std::vector<cplx>& in) const;
    CMatrix compose_matrix() const;
};

// |a> -> |x_a>|x_a - a>: first register the T1 position of a's coset
// representative, second the subgroup position of x_a - a.
Stage stage_pb(const CosetTables& tables);

// Fourier transform of B applied to the second register:
// |b> -> (1/sqrt|B|) sum_j chi_{t2[j]}(b) |j>.  The plain (unconjugated)
// kernel is what reproduces the direct transform below; the classical
// fourier() uses the conjugated one.
Stage stage_fb(const CosetTables& tables);

// Composition [stage_pb, stage_fb]; works for aligned and generated B.
Pipeline qzt_pipeline(const CosetTables& tables);

// Direct transform from the definition: column a carries amplitudes
// (1/sqrt|B|) chi_{t2[j]}(x_a - a) at row (t1 position of x_a, j).
CMatrix direct_qzt_matrix(const CosetTables& tables);

// Diagonal phase e^{-i arg G(x_i, t2_j)} on the transversal grid; the
// unit-modulus stand-in for dividing by G, valid once |G| is constant.
// The window must be validated.
Stage stage_phi(const Window& window);

// Relabels (T1 position, T2 char) as (element of B_*, element of B) through
// the aligned-subgroup isomorphisms.  With lexicographic-minimal transversals
// and sorted subgroup enumerations both index maps are the identity; the
// permutation is computed from the maps regardless.
Stage stage_reinterpret(const IsomorphismPhi& phi, const CosetTables& tables);

// Fourier transform of B_* x B, output labeled by Delta = B x B_*.  The
// first-register kernel pairs B_* with itself through the quotient
// isomorphism and is conjugated; the second pairs B with itself through the
// character labels and is plain.  This orientation is what matches
// direct_qwht_matrix; flipping either one lands on a relabeled variant.
Stage stage_f_delta(const IsomorphismPhi& phi, const CosetTables& tables);

// [stage_pb, stage_fb, stage_phi, stage_reinterpret, stage_f_delta].
// Aligned subgroups only (the relabeling stages need the isomorphisms).
Pipeline qwht_pipeline(const Window& window, const IsomorphismPhi& phi);

// Coefficient transform of the translate system: row (b, b_*) of the matrix
// is conj(g_(b, b_*)), i.e. on input f the output amplitudes are the
// analysis coefficients <g_(b, b_*), f>.  On basis input |a> the amplitude
// at (b, b_*) is conj(g_(b, b_*)(a)).  Rows follow the lattice order.
CMatrix direct_qwht_matrix(const Window& window);

// Named row relabelings used by verify_equivalence when the canonical
// comparison fails; these are the label negations a flipped kernel induces.
struct RowRelabeling {
    std::string name;
    std::vector<int64_t> perm;  // relabeled[perm[r]] = original[r]
};

std::vector<RowRelabeling> qzt_row_relabelings(const CosetTables& tables);
std::vector<RowRelabeling> qwht_row_relabelings(const CosetTables& tables);

struct EquivalenceReport {
    double max_dev = 0.0;        // canonical labeling
    bool pass = false;
    std::string best_name;       // best relabeling, "canonical" when it wins
    double best_dev = 0.0;
};

// Compares the composed pipeline matrix against the direct transform under
// the canonical labeling; on failure reports which relabeling (if any)
// explains the mismatch.  Only the canonical comparison can pass.
EquivalenceReport verify_equivalence(const Pipeline& pipeline, const CMatrix& direct,
                                     double tol, const std::vector<RowRelabeling>& relabelings);

}  // namespace tfq
