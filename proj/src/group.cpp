#include "tfq/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace tfq {

namespace {

int64_t reduce_mod(int64_t v, int64_t n) {
    int64_t r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(Coords moduli) {
    if (moduli.empty())
        fail(ErrorCode::invalid_group, "group needs at least one cyclic factor");
    auto impl = std::make_shared<Impl>();
    impl->moduli = std::move(moduli);
    for (int64_t n : impl->moduli) {
        if (n < 1)
            fail(ErrorCode::invalid_group, "cyclic factor order must be >= 1");
        impl->order *= n;
    }
    impl->roots.reserve(impl->moduli.size());
    for (int64_t n : impl->moduli) {
        std::vector<cplx> row(static_cast<size_t>(n));
        for (int64_t t = 0; t < n; ++t) {
            double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
            row[static_cast<size_t>(t)] = std::polar(1.0, angle);
        }
        impl->roots.push_back(std::move(row));
    }
    impl_ = std::move(impl);
}

GroupElement FiniteAbelianGroup::element(int64_t flat) const {
    return GroupElement(*this, coords_of(flat));
}

DualElement FiniteAbelianGroup::dual_element(int64_t flat) const {
    return DualElement(*this, coords_of(flat));
}

GroupElement FiniteAbelianGroup::make_element(Coords c) const {
    return GroupElement(*this, std::move(c));
}

DualElement FiniteAbelianGroup::make_dual(Coords c) const {
    return DualElement(*this, std::move(c));
}

int64_t FiniteAbelianGroup::flat_of(const Coords& c) const {
    const Coords& n = impl_->moduli;
    int64_t idx = 0;
    for (size_t j = 0; j < n.size(); ++j) idx = idx * n[j] + c[j];
    return idx;
}

Coords FiniteAbelianGroup::coords_of(int64_t flat) const {
    const Coords& n = impl_->moduli;
    if (flat < 0 || flat >= order())
        fail(ErrorCode::shape_error, "flat index out of range");
    Coords c(n.size());
    for (size_t j = n.size(); j-- > 0;) {
        c[j] = flat % n[j];
        flat /= n[j];
    }
    return c;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    if (a.group() != *this || b.group() != *this)
        fail(ErrorCode::domain_mismatch, "element group mismatch in add");
    Coords c(factors());
    for (size_t j = 0; j < factors(); ++j)
        c[j] = reduce_mod(a[j] + b[j], impl_->moduli[j]);
    return GroupElement(*this, std::move(c));
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const {
    if (a.group() != *this)
        fail(ErrorCode::domain_mismatch, "element group mismatch in neg");
    Coords c(factors());
    for (size_t j = 0; j < factors(); ++j)
        c[j] = reduce_mod(-a[j], impl_->moduli[j]);
    return GroupElement(*this, std::move(c));
}

GroupElement FiniteAbelianGroup::sub(const GroupElement& a, const GroupElement& b) const {
    return add(a, neg(b));
}

DualElement FiniteAbelianGroup::add(const DualElement& a, const DualElement& b) const {
    if (a.group() != *this || b.group() != *this)
        fail(ErrorCode::domain_mismatch, "character group mismatch in add");
    Coords c(factors());
    for (size_t j = 0; j < factors(); ++j)
        c[j] = reduce_mod(a[j] + b[j], impl_->moduli[j]);
    return DualElement(*this, std::move(c));
}

DualElement FiniteAbelianGroup::neg(const DualElement& a) const {
    if (a.group() != *this)
        fail(ErrorCode::domain_mismatch, "character group mismatch in neg");
    Coords c(factors());
    for (size_t j = 0; j < factors(); ++j)
        c[j] = reduce_mod(-a[j], impl_->moduli[j]);
    return DualElement(*this, std::move(c));
}

int64_t FiniteAbelianGroup::add_index(int64_t a, int64_t b) const {
    Coords ca = coords_of(a), cb = coords_of(b);
    for (size_t j = 0; j < factors(); ++j)
        ca[j] = reduce_mod(ca[j] + cb[j], impl_->moduli[j]);
    return flat_of(ca);
}

int64_t FiniteAbelianGroup::neg_index(int64_t a) const {
    Coords c = coords_of(a);
    for (size_t j = 0; j < factors(); ++j)
        c[j] = reduce_mod(-c[j], impl_->moduli[j]);
    return flat_of(c);
}

int64_t FiniteAbelianGroup::sub_index(int64_t a, int64_t b) const {
    return add_index(a, neg_index(b));
}

cplx FiniteAbelianGroup::root(size_t factor, int64_t t) const {
    int64_t n = impl_->moduli[factor];
    return impl_->roots[factor][static_cast<size_t>(reduce_mod(t, n))];
}

std::string FiniteAbelianGroup::spec_string() const {
    std::ostringstream out;
    for (size_t j = 0; j < factors(); ++j) {
        if (j) out << 'x';
        out << 'Z' << impl_->moduli[j];
    }
    return out.str();
}

GroupElement::GroupElement(FiniteAbelianGroup group, Coords coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != group_.factors())
        fail(ErrorCode::shape_error, "element coordinate count does not match group");
    for (size_t j = 0; j < coords_.size(); ++j)
        coords_[j] = reduce_mod(coords_[j], group_.moduli()[j]);
}

DualElement::DualElement(FiniteAbelianGroup group, Coords coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != group_.factors())
        fail(ErrorCode::shape_error, "character coordinate count does not match group");
    for (size_t j = 0; j < coords_.size(); ++j)
        coords_[j] = reduce_mod(coords_[j], group_.moduli()[j]);
}

cplx char_eval(const DualElement& a_star, const GroupElement& a) {
    const FiniteAbelianGroup& g = a.group();
    if (a_star.group() != g)
        fail(ErrorCode::domain_mismatch, "character and element belong to different groups");
    cplx v{1.0, 0.0};
    for (size_t j = 0; j < g.factors(); ++j)
        v *= g.root(j, a_star[j] * a[j]);
    return v;
}

void Subgroup::finish(const FiniteAbelianGroup& group) {
    parent_ = group;
    std::sort(elements_.begin(), elements_.end());
    position_.assign(static_cast<size_t>(group.order()), -1);
    for (size_t i = 0; i < elements_.size(); ++i)
        position_[static_cast<size_t>(elements_[i])] = static_cast<int64_t>(i);
}

Subgroup Subgroup::from_divisors(const FiniteAbelianGroup& group, Coords divisors) {
    if (divisors.size() != group.factors())
        fail(ErrorCode::invalid_subgroup, "need one divisor per cyclic factor");
    for (size_t j = 0; j < divisors.size(); ++j) {
        int64_t d = divisors[j], n = group.moduli()[j];
        if (d < 1 || n % d != 0)
            fail(ErrorCode::invalid_subgroup,
                 std::to_string(d) + " does not divide " + std::to_string(n));
    }
    Subgroup s;
    s.kind_ = Kind::aligned;
    s.divisors_ = std::move(divisors);
    // Elements are the tuples (d_j * k_j), k_j < n_j / d_j, generated in
    // lexicographic order directly.
    Coords quotients(group.factors());
    int64_t count = 1;
    for (size_t j = 0; j < group.factors(); ++j) {
        quotients[j] = group.moduli()[j] / s.divisors_[j];
        count *= quotients[j];
    }
    Coords k(group.factors(), 0);
    for (int64_t i = 0; i < count; ++i) {
        Coords c(group.factors());
        for (size_t j = 0; j < group.factors(); ++j) c[j] = s.divisors_[j] * k[j];
        s.elements_.push_back(group.flat_of(c));
        for (size_t j = group.factors(); j-- > 0;) {
            if (++k[j] < quotients[j]) break;
            k[j] = 0;
        }
    }
    s.finish(group);
    return s;
}

Subgroup Subgroup::from_generators(const FiniteAbelianGroup& group,
                                   const std::vector<GroupElement>& generators) {
    for (const auto& g : generators)
        if (g.group() != group)
            fail(ErrorCode::domain_mismatch, "generator belongs to a different group");
    Subgroup s;
    s.kind_ = Kind::generated;
    s.generators_ = generators;
    // Closure by breadth-first accumulation over the generator translates.
    std::set<int64_t> seen{0};
    std::vector<int64_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<int64_t> next;
        for (int64_t e : frontier) {
            for (const auto& g : generators) {
                int64_t s2 = group.add_index(e, g.flat());
                if (seen.insert(s2).second) next.push_back(s2);
            }
        }
        frontier = std::move(next);
    }
    s.elements_.assign(seen.begin(), seen.end());
    s.finish(group);
    return s;
}

Subgroup Subgroup::from_element_set(const FiniteAbelianGroup& group,
                                    std::vector<int64_t> elements, Kind kind,
                                    Coords divisors) {
    Subgroup s;
    s.kind_ = kind;
    s.divisors_ = std::move(divisors);
    s.elements_ = std::move(elements);
    s.finish(group);
    if (kind == Kind::generated)
        for (int64_t e : s.elements_) s.generators_.push_back(group.element(e));
    return s;
}

const Coords& Subgroup::divisors() const {
    if (kind_ != Kind::aligned)
        fail(ErrorCode::unsupported_subgroup, "divisors are defined for aligned subgroups only");
    return divisors_;
}

std::string Subgroup::spec_string() const {
    std::ostringstream out;
    if (kind_ == Kind::aligned) {
        out << "div:";
        for (size_t j = 0; j < divisors_.size(); ++j) {
            if (j) out << ',';
            out << divisors_[j];
        }
    } else {
        out << "gen:";
        for (size_t i = 0; i < generators_.size(); ++i) {
            if (i) out << ';';
            out << '(';
            const Coords& c = generators_[i].coords();
            for (size_t j = 0; j < c.size(); ++j) {
                if (j) out << ',';
                out << c[j];
            }
            out << ')';
        }
        if (generators_.empty()) out << "()";
    }
    return out.str();
}

Subgroup annihilator(const Subgroup& sub) {
    const FiniteAbelianGroup& g = sub.parent();
    const Coords& n = g.moduli();
    const int64_t N = g.order();
    // chi_{a*}(b) = 1  <=>  sum_j a*_j b_j (N/n_j) = 0 (mod N); exact in
    // integers, no floating-point membership decisions.
    std::vector<int64_t> weight(n.size());
    for (size_t j = 0; j < n.size(); ++j) weight[j] = N / n[j];

    std::vector<Coords> sub_coords;
    sub_coords.reserve(sub.elements().size());
    for (int64_t b : sub.elements()) sub_coords.push_back(g.coords_of(b));

    std::vector<int64_t> members;
    for (int64_t a = 0; a < N; ++a) {
        Coords ac = g.coords_of(a);
        bool ok = true;
        for (const Coords& bc : sub_coords) {
            int64_t acc = 0;
            for (size_t j = 0; j < n.size(); ++j)
                acc = (acc + ac[j] * bc[j] % N * weight[j]) % N;
            if (acc != 0) { ok = false; break; }
        }
        if (ok) members.push_back(a);
    }

    if (sub.aligned()) {
        Coords ann_div(n.size());
        for (size_t j = 0; j < n.size(); ++j) ann_div[j] = n[j] / sub.divisors()[j];
        return Subgroup::from_element_set(g, std::move(members), Subgroup::Kind::aligned,
                                          std::move(ann_div));
    }
    return Subgroup::from_element_set(g, std::move(members), Subgroup::Kind::generated, {});
}

CosetTables coset_tables(const Subgroup& sub) {
    const FiniteAbelianGroup& g = sub.parent();
    const int64_t N = g.order();
    CosetTables t;
    t.subgroup = sub;
    t.ann = annihilator(sub);

    // Ascending scan: the first unassigned member of each coset is its
    // lexicographic minimum.
    t.rep_of.assign(static_cast<size_t>(N), -1);
    t.t1_pos.assign(static_cast<size_t>(N), -1);
    for (int64_t a = 0; a < N; ++a) {
        if (t.rep_of[static_cast<size_t>(a)] >= 0) continue;
        t.t1_pos[static_cast<size_t>(a)] = static_cast<int64_t>(t.t1.size());
        t.t1.push_back(a);
        for (int64_t b : sub.elements())
            t.rep_of[static_cast<size_t>(g.add_index(a, b))] = a;
    }

    t.dual_rep_of.assign(static_cast<size_t>(N), -1);
    t.t2_pos.assign(static_cast<size_t>(N), -1);
    for (int64_t a = 0; a < N; ++a) {
        if (t.dual_rep_of[static_cast<size_t>(a)] >= 0) continue;
        t.t2_pos[static_cast<size_t>(a)] = static_cast<int64_t>(t.t2.size());
        t.t2.push_back(a);
        for (int64_t bs : t.ann.elements())
            t.dual_rep_of[static_cast<size_t>(g.add_index(a, bs))] = a;
    }

    t.restriction.resize(t.t2.size());
    for (size_t j = 0; j < t.t2.size(); ++j) {
        DualElement chi = g.dual_element(t.t2[j]);
        t.restriction[j].reserve(sub.elements().size());
        for (int64_t b : sub.elements())
            t.restriction[j].push_back(char_eval(chi, g.element(b)));
    }
    return t;
}

std::pair<GroupElement, GroupElement> coset_decompose(const CosetTables& tables,
                                                      const GroupElement& a) {
    const FiniteAbelianGroup& g = tables.subgroup.parent();
    if (a.group() != g)
        fail(ErrorCode::domain_mismatch, "element belongs to a different group");
    GroupElement x = g.element(tables.rep_of[static_cast<size_t>(a.flat())]);
    return {x, g.sub(x, a)};
}

IsomorphismPhi::IsomorphismPhi(FiniteAbelianGroup group, Subgroup sub)
    : group_(std::move(group)), sub_(std::move(sub)) {
    if (sub_.parent() != group_)
        fail(ErrorCode::domain_mismatch, "subgroup belongs to a different group");
    if (!sub_.aligned())
        fail(ErrorCode::unsupported_subgroup,
             "explicit dual isomorphisms need an aligned subgroup");
    divisors_ = sub_.divisors();
    quotients_.resize(divisors_.size());
    for (size_t j = 0; j < divisors_.size(); ++j)
        quotients_[j] = group_.moduli()[j] / divisors_[j];
    labels_ = FiniteAbelianGroup(quotients_);
}

DualElement IsomorphismPhi::a_to_dual(const GroupElement& a) const {
    if (a.group() != group_) fail(ErrorCode::domain_mismatch, "element group mismatch");
    return group_.make_dual(a.coords());
}

GroupElement IsomorphismPhi::dual_to_a(const DualElement& d) const {
    if (d.group() != group_) fail(ErrorCode::domain_mismatch, "character group mismatch");
    return group_.make_element(d.coords());
}

GroupElement IsomorphismPhi::b_to_bstar(const GroupElement& b) const {
    if (b.group() != group_) fail(ErrorCode::domain_mismatch, "element group mismatch");
    if (!sub_.contains_index(b.flat()))
        fail(ErrorCode::domain_mismatch, "element does not lie in the subgroup");
    Coords k(divisors_.size());
    for (size_t j = 0; j < divisors_.size(); ++j) k[j] = b[j] / divisors_[j];
    return labels_.make_element(std::move(k));
}

GroupElement IsomorphismPhi::bstar_to_b(const GroupElement& label) const {
    if (label.group() != labels_) fail(ErrorCode::domain_mismatch, "label group mismatch");
    Coords c(divisors_.size());
    for (size_t j = 0; j < divisors_.size(); ++j) c[j] = divisors_[j] * label[j];
    return group_.make_element(std::move(c));
}

DualElement IsomorphismPhi::quot_to_ann(const GroupElement& t1_rep) const {
    if (t1_rep.group() != group_) fail(ErrorCode::domain_mismatch, "element group mismatch");
    Coords c(divisors_.size());
    for (size_t j = 0; j < divisors_.size(); ++j)
        c[j] = (quotients_[j] * t1_rep[j]) % group_.moduli()[j];
    return group_.make_dual(std::move(c));
}

GroupElement IsomorphismPhi::ann_to_quot(const DualElement& bstar_elem) const {
    if (bstar_elem.group() != group_) fail(ErrorCode::domain_mismatch, "character group mismatch");
    Coords c(divisors_.size());
    for (size_t j = 0; j < divisors_.size(); ++j) {
        if (bstar_elem[j] % quotients_[j] != 0)
            fail(ErrorCode::domain_mismatch, "character does not lie in the annihilator");
        c[j] = bstar_elem[j] / quotients_[j];
    }
    return group_.make_element(std::move(c));
}

IsomorphismPhi make_phi(const FiniteAbelianGroup& group, const Subgroup& sub) {
    return IsomorphismPhi(group, sub);
}

}  // namespace tfq
