#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "markedgroups/element.hpp"
#include "markedgroups/words.hpp"

namespace mg {

enum class Family {
    cyclic,
    abelian,            // Z^l + Z_m
    sd4,                // Z4 x| Z_{2^(n-1)}
    quaternion,         // Q_{2^n}
    dihedral,           // D_{2n} = Z2 x| Z_n
    limit_cover,        // Z4 x| (Z^l + Z_{2^k})
    limit_quaternion,   // G(l,k)
    limit_dihedral,     // Z2 x| (Z^l + Z_{2^k})
    direct4,            // Z4 x (Z^l + Z_m)
    central_quotient,
};

const char* family_name(Family f);

enum class Action { trivial, sign };

/// A concrete group from the closed family above.
///
/// Every member is a quotient of (Z_p x| (Z^l + Z_M)) by a finite central
/// subgroup K. Products follow (x1,a1)(x2,a2) = (x1+x2, (-1)^x2 a1 + a2) when
/// the action is by sign. Canonical representatives of K-cosets are the
/// lexicographic minimum of the coset.
class Group {
public:
    static Group cyclic(std::int64_t n);
    static Group abelian(int l, std::int64_t m);
    static Group sd4(int n);
    static Group quaternion(int n);
    static Group dihedral(std::int64_t n);
    static Group limit_cover(int l, int k);
    static Group limit_quaternion(int l, int k);
    static Group limit_dihedral(int l, int k);
    static Group direct4(int l, std::int64_t m);

    /// Parses the descriptor mini-language, e.g. `quaternion(4)`, `limitQ(1,1)`,
    /// `sd4(4)/{(0;;0),(2;;4)}`.
    static Group parse(std::string_view descriptor);

    const std::string& descriptor() const { return descriptor_; }
    Family family() const { return family_; }
    const std::vector<std::int64_t>& params() const { return params_; }

    int top_order() const { return top_; }
    Action action() const { return action_; }
    int free_rank() const { return free_rank_; }
    std::int64_t torsion() const { return torsion_; }
    /// Quotiented central subgroup in the cover (sorted); empty when none.
    std::span<const Element> kernel() const { return kernel_; }

    bool finite() const { return free_rank_ == 0; }
    /// Group order; throws for infinite groups.
    std::uint64_t order() const;

    Element identity() const { return Element{}; }
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    Element pow(const Element& a, std::int64_t e) const;
    bool eq(const Element& a, const Element& b) const { return a == b; }

    /// Reduces an arbitrary cover triple to the canonical representative.
    Element canonical(Element raw) const;
    /// True iff e is a canonical element of this group.
    bool contains(const Element& e) const;

    /// Least n >= 1 with e^n = 1, or nullopt when e has infinite order.
    std::optional<std::uint64_t> element_order(const Element& e) const;

    /// All elements in increasing canonical order; finite groups only.
    std::vector<Element> elements() const;

    const std::vector<std::string>& generator_names() const { return gen_names_; }
    const std::vector<Element>& generators() const { return gens_; }
    /// Looks up a named generator; `a` aliases `a1` when the free rank is 1.
    std::optional<Element> generator(std::string_view name) const;

    /// Evaluates a word written over the named generators.
    Element element_from_text(std::string_view text) const;
    std::string format(const Element& e) const;
    Element parse_element(std::string_view text) const;

    /// Quotient by a central subgroup given as its full element list.
    /// Throws InputError when the list is not closed or not central.
    Group central_quotient(std::span<const Element> subgroup) const;

    /// The group with the quotient removed: the ambient Z_p x| (Z^l + Z_M).
    Group cover() const;

    /// Raw product in the cover (no canonicalization).
    Element cover_mul(const Element& a, const Element& b) const;

private:
    Group() = default;
    void check(const Element& e) const;
    void set_standard_generators(std::vector<std::string> names, std::vector<Element> gens);

    std::string descriptor_;
    Family family_ = Family::cyclic;
    std::vector<std::int64_t> params_;
    int top_ = 1;
    Action action_ = Action::trivial;
    int free_rank_ = 0;
    std::int64_t torsion_ = 1;
    std::vector<Element> kernel_;
    std::vector<std::string> gen_names_;
    std::vector<Element> gens_;
};

/// A finite list of elements closed under product and inverse.
struct SubgroupWitness {
    std::vector<Element> elements;
};

/// True iff the list contains the identity and is closed under mul and inv.
bool is_subgroup(const Group& g, std::span<const Element> elems);
/// True iff every listed element commutes with every generator of g.
bool is_central(const Group& g, std::span<const Element> elems);

/// Subgroup generated by the given elements (finite closure required).
SubgroupWitness generated_subgroup(const Group& g, std::span<const Element> gens,
                                   std::size_t limit = 1u << 20);

/// Involutions. Finite groups are exhausted; infinite groups are solved in
/// closed form over canonical forms.
struct InvolutionCensus {
    /// Every involution with zero free part, in increasing order.
    std::vector<Element> with_zero_free_part;
    /// Infinite groups with sign action only: every (odd x, v, t) is an
    /// involution. `family_representative` is the least such element.
    bool unbounded = false;
    std::optional<Element> family_representative;

    /// Number of involutions, or nullopt when unbounded.
    std::optional<std::size_t> count() const {
        if (unbounded) return std::nullopt;
        return with_zero_free_part.size();
    }
};
InvolutionCensus involutions(const Group& g);

/// Exhaustive involution list over a box |v_i| <= bound. Test/oracle helper
/// for infinite groups; exact for finite groups.
std::vector<Element> involutions_in_box(const Group& g, int bound);

/// Elements with every |v_i| <= bound (all elements for finite groups).
std::vector<Element> elements_in_box(const Group& g, int bound);

/// Center. Finite groups: exhaustive. Infinite groups: the elements of the
/// box |v_i| <= bound commuting with the standard generators.
SubgroupWitness center(const Group& g, int bound = 4);

/// Generator-image table of an isomorphism g -> h, images of g's standard
/// generators in order.
struct Isomorphism {
    std::vector<Element> images;
};
std::optional<Isomorphism> iso_search(const Group& g, const Group& h);

}  // namespace mg
