#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "markedgroups/group.hpp"
#include "markedgroups/marked.hpp"
#include "markedgroups/table.hpp"
#include "markedgroups/words.hpp"

namespace mg {

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    /// Provenance tag carried into every report that uses it.
    std::string note;

    int rank() const { return static_cast<int>(generators.size()); }
    std::string to_text() const;
};

/// `< y t | t^4, y t y^-1 t, y^2 t^-2 >`
Presentation parse_presentation(std::string_view text);

/// Reconstructed finite presentation of G(l,k) on generators y, a1..al, t.
Presentation presentation_of_limit(int l, int k);

struct Homomorphism {
    std::vector<Element> images;  // one per presentation generator
};

/// Von Dyck check: every relator evaluates to the identity under `images`.
bool satisfies_relators(const Presentation& p, const Group& target, std::span<const Element> images);

/// Visits homomorphisms in deterministic order (generator images assigned in
/// presentation order, candidates in element order). The visitor returns
/// false to stop. Returns the number of homomorphisms visited.
std::uint64_t for_each_hom(const Presentation& p, const CayleyTable& target,
                           const std::function<bool(const std::vector<std::uint32_t>&)>& visit);

std::vector<Homomorphism> homs(const Presentation& p, const Group& target);

/// Image of a canonical G(l,k) element y^x a^v t^s under generator images.
Element limit_element_image(const Group& limit, const Group& target, std::span<const Element> images,
                            const Element& e);

struct CollisionWitness {
    Element first;
    Element second;
    std::string first_word;
    std::string second_word;
    Element image;
    /// Geodesic words of every ball element sharing `image`.
    std::vector<std::string> fiber;
};

struct WitnessAttempt {
    int n = 0;
    bool success = false;
    std::uint64_t homs_examined = 0;
    /// For failures: first collision of the hom injective on the longest
    /// prefix of the ball (BFS order).
    std::optional<CollisionWitness> collision;
};

struct ResidualWitness {
    int radius = 0;
    bool found = false;
    int n = 0;
    Homomorphism hom;
    std::vector<Element> marking_images;
    std::size_t ball_size = 0;
    bool von_dyck_verified = false;
    bool injectivity_verified = false;
    bool distance_verified = false;  // Rel_R(limit) = Rel_R(Q_{2^n}, images)
    std::vector<WitnessAttempt> attempts;
    std::string presentation_note;
};

/// Smallest n <= n_max with a homomorphism G(l,k) -> Q_{2^n} injective on the
/// radius-R ball of the marked limit group.
ResidualWitness residual_witness(const MarkedGroup& limit, int radius, int n_max);

std::vector<ResidualWitness> fully_residual_check(const MarkedGroup& limit, const std::vector<int>& radii, int n_max);

/// CSV: R, n, generator images, ball size, verified distance bound.
std::string witness_table_csv(const MarkedGroup& limit, const std::vector<ResidualWitness>& table);

}  // namespace mg
