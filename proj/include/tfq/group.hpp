#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tfq/error.hpp"

namespace tfq {

using cplx = std::complex<double>;
using Coords = std::vector<int64_t>;

class GroupElement;
class DualElement;

// Finite abelian group presented as a product of cyclic factors
// Z_{n_1} x ... x Z_{n_k}.  Elements are coordinate tuples with
// 0 <= c_j < n_j; the flat enumeration is mixed-radix with the last
// coordinate fastest, which coincides with lexicographic order on tuples.
//
// The character group is represented on the same coordinates: the tuple
// (m_1,...,m_k) names the character a |-> exp(2*pi*i * sum_j m_j a_j / n_j).
// Copies are cheap (shared immutable payload), equality compares moduli.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;   // empty placeholder, not a valid group
    explicit FiniteAbelianGroup(Coords moduli);

    const Coords& moduli() const { return impl_->moduli; }
    int64_t order() const { return impl_->order; }
    size_t factors() const { return impl_->moduli.size(); }

    bool operator==(const FiniteAbelianGroup& o) const {
        if (impl_ == o.impl_) return true;
        if (!impl_ || !o.impl_) return false;
        return impl_->moduli == o.impl_->moduli;
    }
    bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }

    GroupElement element(int64_t flat) const;
    DualElement dual_element(int64_t flat) const;
    GroupElement make_element(Coords c) const;   // reduces coordinates mod n_j
    DualElement make_dual(Coords c) const;

    int64_t flat_of(const Coords& c) const;      // assumes reduced coordinates
    Coords coords_of(int64_t flat) const;

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    DualElement add(const DualElement& a, const DualElement& b) const;
    DualElement neg(const DualElement& a) const;

    int64_t add_index(int64_t a, int64_t b) const;
    int64_t neg_index(int64_t a) const;
    int64_t sub_index(int64_t a, int64_t b) const;

    // exp(2*pi*i * t / n_j), table-backed so repeated character evaluations
    // stay cheap and bit-reproducible.
    cplx root(size_t factor, int64_t t) const;

    std::string spec_string() const;             // e.g. "Z2xZ4"

private:
    struct Impl {
        Coords moduli;
        int64_t order = 1;
        std::vector<std::vector<cplx>> roots;    // roots[j][t] = exp(2 pi i t / n_j)
    };
    std::shared_ptr<const Impl> impl_;
};

class GroupElement {
public:
    GroupElement() = default;
    GroupElement(FiniteAbelianGroup group, Coords coords);

    const FiniteAbelianGroup& group() const { return group_; }
    const Coords& coords() const { return coords_; }
    int64_t operator[](size_t j) const { return coords_[j]; }
    int64_t flat() const { return group_.flat_of(coords_); }

    bool operator==(const GroupElement& o) const {
        return group_ == o.group_ && coords_ == o.coords_;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

private:
    FiniteAbelianGroup group_;
    Coords coords_;
};

// Character index tuple.  Kept as a distinct type from GroupElement so that
// signals over A and tables over A* cannot be mixed up silently.
class DualElement {
public:
    DualElement() = default;
    DualElement(FiniteAbelianGroup group, Coords coords);

    const FiniteAbelianGroup& group() const { return group_; }
    const Coords& coords() const { return coords_; }
    int64_t operator[](size_t j) const { return coords_[j]; }
    int64_t flat() const { return group_.flat_of(coords_); }

    bool operator==(const DualElement& o) const {
        return group_ == o.group_ && coords_ == o.coords_;
    }
    bool operator!=(const DualElement& o) const { return !(*this == o); }

private:
    FiniteAbelianGroup group_;
    Coords coords_;
};

// chi_{a*}(a) = exp(2*pi*i * sum_j a*_j a_j / n_j).  Throws on mismatched
// parent groups.
cplx char_eval(const DualElement& a_star, const GroupElement& a);

// Subgroup of a FiniteAbelianGroup.  Two constructions:
//   aligned   -- product of cyclic subgroups, one divisor d_j per factor;
//                elements are the multiples of d_j in each coordinate
//   generated -- closure of an explicit generator list
// Elements are stored as ascending flat indices (= lexicographic order).
class Subgroup {
public:
    enum class Kind { aligned, generated };

    Subgroup() = default;   // empty placeholder, not a valid subgroup

    static Subgroup from_divisors(const FiniteAbelianGroup& group, Coords divisors);
    static Subgroup from_generators(const FiniteAbelianGroup& group,
                                    const std::vector<GroupElement>& generators);

    const FiniteAbelianGroup& parent() const { return parent_; }
    Kind kind() const { return kind_; }
    bool aligned() const { return kind_ == Kind::aligned; }
    const Coords& divisors() const;               // aligned subgroups only
    const std::vector<GroupElement>& generators() const { return generators_; }

    const std::vector<int64_t>& elements() const { return elements_; }
    int64_t order() const { return static_cast<int64_t>(elements_.size()); }
    bool contains_index(int64_t flat) const { return position_[static_cast<size_t>(flat)] >= 0; }
    // Position of a flat index inside elements(), -1 when absent.
    int64_t element_position(int64_t flat) const { return position_[static_cast<size_t>(flat)]; }

    std::string spec_string() const;              // "div:..." or "gen:(...);..."

    // Used by annihilator(): wraps a known element set as a subgroup without
    // re-deriving a generating set.
    static Subgroup from_element_set(const FiniteAbelianGroup& group,
                                     std::vector<int64_t> elements, Kind kind,
                                     Coords divisors);

private:
    FiniteAbelianGroup parent_;
    Kind kind_ = Kind::generated;
    Coords divisors_;                             // empty unless aligned
    std::vector<GroupElement> generators_;        // empty for aligned
    std::vector<int64_t> elements_;               // sorted flat indices
    std::vector<int64_t> position_;               // |A| entries, -1 when absent

    void finish(const FiniteAbelianGroup& group);
};

// Annihilator B_* = { a* in A* : a*(b) = 1 for all b in B }.  Membership is
// decided in integer arithmetic (sum_j a*_j b_j N/n_j mod N), so the result
// is exact.  For an aligned B with divisors d_j the result is aligned with
// divisors n_j/d_j.
Subgroup annihilator(const Subgroup& sub);

// Coset bookkeeping shared by the Zak machinery and the register pipelines.
//   t1      coset representatives of B in A, lexicographically minimal
//   t2      coset representatives of B_* in A*, lexicographically minimal
//   restriction[j][l] = chi_{t2[j]}(B.elements[l]); row j is the character
//           of B carried by the j-th representative.  Restriction over T2
//           enumerates the full character group of B exactly once.
struct CosetTables {
    Subgroup subgroup;                 // B
    Subgroup ann;                      // B_*
    std::vector<int64_t> t1;
    std::vector<int64_t> rep_of;       // flat a  -> flat x_a
    std::vector<int64_t> t1_pos;       // flat x  -> index in t1, -1 otherwise
    std::vector<int64_t> t2;
    std::vector<int64_t> dual_rep_of;  // flat a* -> flat representative
    std::vector<int64_t> t2_pos;
    std::vector<std::vector<cplx>> restriction;

    int64_t t1_size() const { return static_cast<int64_t>(t1.size()); }
    int64_t t2_size() const { return static_cast<int64_t>(t2.size()); }
};

CosetTables coset_tables(const Subgroup& sub);

// a = x_a - b with x_a = rep_of[a]; returns (x_a, x_a - a).  The second
// component always lies in B.
std::pair<GroupElement, GroupElement> coset_decompose(const CosetTables& tables,
                                                      const GroupElement& a);

// Explicit isomorphisms attached to an aligned subgroup B with divisors d_j
// (write m_j = n_j / d_j):
//   a_to_dual    A -> A*        identity on coordinate tuples
//   b_to_bstar   B -> B^        (d_j k_j) |-> (k_j), B^ modelled as
//                               the product of Z_{m_j} ("label group")
//   quot_to_ann  T1 -> B_*      (x_j) |-> (m_j x_j mod n_j)
// All three are additive bijections; generated subgroups are rejected.
class IsomorphismPhi {
public:
    IsomorphismPhi(FiniteAbelianGroup group, Subgroup sub);

    const FiniteAbelianGroup& group() const { return group_; }
    const Subgroup& subgroup() const { return sub_; }
    const FiniteAbelianGroup& bstar_labels() const { return labels_; }
    const Coords& quotients() const { return quotients_; }

    DualElement a_to_dual(const GroupElement& a) const;
    GroupElement dual_to_a(const DualElement& d) const;
    GroupElement b_to_bstar(const GroupElement& b) const;   // element of bstar_labels()
    GroupElement bstar_to_b(const GroupElement& label) const;
    DualElement quot_to_ann(const GroupElement& t1_rep) const;
    GroupElement ann_to_quot(const DualElement& bstar_elem) const;

private:
    FiniteAbelianGroup group_;
    Subgroup sub_;
    Coords divisors_;
    Coords quotients_;            // m_j = n_j / d_j
    FiniteAbelianGroup labels_;   // product of Z_{m_j}
};

IsomorphismPhi make_phi(const FiniteAbelianGroup& group, const Subgroup& sub);

}  // namespace tfq
