#pragma once

// Exact arithmetic and structural machinery for finite abelian groups:
// product groups given by cyclic factor moduli, explicit subgroups,
// cosets, quotients, sumsets, and the coset-finding / bound-checking
// routines the search algorithms consume.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace zsram {

struct Error : std::runtime_error {
    enum class Kind { validation, structural, capacity, truncation, internal };
    Kind kind;
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void throw_validation(const std::string& msg) {
    throw Error(Error::Kind::validation, msg);
}
[[noreturn]] inline void throw_structural(const std::string& msg) {
    throw Error(Error::Kind::structural, msg);
}
[[noreturn]] inline void throw_capacity(const std::string& msg) {
    throw Error(Error::Kind::capacity, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
    throw Error(Error::Kind::internal, msg);
}

// An element of a product group, as a tuple of reduced residues.
struct GroupElement {
    std::vector<int> residues;

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement&) const = default;
};

struct ElementHash {
    size_t operator()(const GroupElement& e) const {
        size_t h = 1469598103934665603ull;
        for (int r : e.residues) {
            h ^= static_cast<size_t>(r) + 0x9e3779b9;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// A finite abelian group Z_{m1} x ... x Z_{mk}. The empty moduli list is the
// trivial group. Moduli need not be in invariant-factor form; see
// invariant_factors() for canonicalization.
class AbelianGroup {
  public:
    AbelianGroup() : order_(1) {}
    explicit AbelianGroup(std::vector<int> moduli);

    const std::vector<int>& moduli() const { return moduli_; }
    int rank() const { return static_cast<int>(moduli_.size()); }
    long long order() const { return order_; }
    long long exponent() const;  // lcm of the moduli
    bool invariant_factor_form() const;

    GroupElement zero() const { return GroupElement{std::vector<int>(moduli_.size(), 0)}; }
    bool valid(const GroupElement& e) const;
    void require(const GroupElement& e) const;

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }
    // g added k times; k may be any integer (reduced per component).
    GroupElement scalar_mul(long long k, const GroupElement& g) const;

    // Mixed-radix index with the first residue most significant, so index
    // order coincides with lexicographic order on residue tuples.
    long long index_of(const GroupElement& e) const;
    GroupElement element_at(long long idx) const;
    std::vector<GroupElement> elements() const;

    bool operator==(const AbelianGroup&) const = default;

  private:
    std::vector<int> moduli_;
    long long order_;
};

// Canonical isomorphic group with m1 | m2 | ... | mk.
AbelianGroup invariant_factors(const std::vector<int>& moduli);

// A subgroup stored as an explicit, lexicographically sorted element set.
class Subgroup {
  public:
    Subgroup() : parent_(), elements_{GroupElement{}} {}  // trivial group's subgroup
    static Subgroup trivial(const AbelianGroup& g);
    static Subgroup whole(const AbelianGroup& g);
    // Validates: zero present, closure under add/neg, Lagrange divisibility.
    static Subgroup from_elements(const AbelianGroup& g, std::vector<GroupElement> elems);

    const AbelianGroup& parent() const { return parent_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    long long size() const { return static_cast<long long>(elements_.size()); }
    bool contains(const GroupElement& e) const;
    bool contains_all(const Subgroup& other) const;
    bool is_trivial() const { return elements_.size() == 1; }
    bool is_whole() const { return size() == parent_.order(); }

    bool operator==(const Subgroup& o) const {
        return parent_ == o.parent_ && elements_ == o.elements_;
    }

  private:
    Subgroup(AbelianGroup g, std::vector<GroupElement> elems)
        : parent_(std::move(g)), elements_(std::move(elems)) {}
    AbelianGroup parent_;
    std::vector<GroupElement> elements_;
    friend Subgroup generated_subgroup(const AbelianGroup&, const std::vector<GroupElement>&);
};

// Smallest subgroup containing S; generated_subgroup({}) = {0}.
Subgroup generated_subgroup(const AbelianGroup& g, const std::vector<GroupElement>& gens);

// Every subgroup exactly once, sorted by (size, lexicographic element list).
// Group order above the cap is a capacity error.
std::vector<Subgroup> enumerate_subgroups(const AbelianGroup& g, long long order_cap = 4096);

struct Coset {
    GroupElement representative;
    Subgroup subgroup;

    bool contains(const GroupElement& e) const;
    GroupElement canonical_rep() const;  // lexicographically smallest member
    std::vector<GroupElement> elements() const;
    bool same_coset(const Coset& o) const;
};

// Quotient of a carrier U <= Gamma0 by a divisor H <= U. Canonical
// representatives are the lexicographically smallest elements of each coset;
// the projection is total on the carrier.
class QuotientGroup {
  public:
    QuotientGroup(const AbelianGroup& parent, const Subgroup& divisor);
    QuotientGroup(const Subgroup& universe, const Subgroup& divisor);

    const AbelianGroup& parent() const { return parent_; }
    const Subgroup& universe() const { return universe_; }
    const Subgroup& divisor() const { return divisor_; }
    const std::vector<GroupElement>& reps() const { return reps_; }
    long long size() const { return static_cast<long long>(reps_.size()); }
    bool is_trivial() const { return reps_.size() == 1; }

    GroupElement project(const GroupElement& e) const;
    int rep_index(const GroupElement& e) const;  // index of project(e) in reps()

    GroupElement zero() const { return project(parent_.zero()); }
    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        return project(parent_.add(a, b));
    }
    GroupElement neg(const GroupElement& a) const { return project(parent_.neg(a)); }

  private:
    void build();
    AbelianGroup parent_;
    Subgroup universe_;
    Subgroup divisor_;
    std::vector<GroupElement> reps_;
    std::unordered_map<GroupElement, int, ElementHash> rep_of_;
};

inline QuotientGroup quotient(const AbelianGroup& g, const Subgroup& h) {
    return QuotientGroup(g, h);
}
inline QuotientGroup quotient(const Subgroup& universe, const Subgroup& h) {
    return QuotientGroup(universe, h);
}

// All subgroups of a quotient, each given as its sorted set of canonical
// representatives; same (size, lex) ordering as enumerate_subgroups.
std::vector<std::vector<GroupElement>> enumerate_quotient_subgroups(const QuotientGroup& q,
                                                                    long long order_cap = 4096);

// psi(H, H'): the subgroup of the carrier obtained by lifting a subgroup H of
// carrier/H' back through the projection. H may be given by arbitrary coset
// representatives; the result is representative-independent.
Subgroup psi(const QuotientGroup& q, const std::vector<GroupElement>& subgroup_of_quotient);

// {a+b : a in A, b in B}, sorted unique. sumset(A, {}) = {}.
std::vector<GroupElement> sumset(const AbelianGroup& g, const std::vector<GroupElement>& a,
                                 const std::vector<GroupElement>& b);

struct KneserReport {
    bool cardinality = false;  // |A+B| >= min(|G|, |A|+|B|-1)
    std::optional<std::pair<GroupElement, Subgroup>> coset;  // a+H subset of A+B, H nontrivial
    long long sumset_size = 0;
    bool holds() const { return cardinality || coset.has_value(); }
};

// Which disjunct of Kneser's theorem holds for the pair (A, B). Callers
// looping over many pairs of the same group can pass a precomputed
// enumerate_subgroups result to avoid re-deriving the lattice.
KneserReport kneser_check(const AbelianGroup& g, const std::vector<GroupElement>& a,
                          const std::vector<GroupElement>& b,
                          const std::vector<Subgroup>* subgroup_cache = nullptr);

// A coset a+H contained in S with H nontrivial of maximum size; ties broken
// by enumerate_subgroups order, then smallest representative.
std::optional<std::pair<GroupElement, Subgroup>> find_coset_in(
    const std::vector<GroupElement>& s, const AbelianGroup& g,
    const std::vector<Subgroup>* subgroup_cache = nullptr);

struct QuotientCoset {
    GroupElement rep;                        // smallest valid representative
    std::vector<GroupElement> subgroup;      // subgroup of the quotient, as reps
};
std::optional<QuotientCoset> find_coset_in(const std::vector<GroupElement>& s_reps,
                                           const QuotientGroup& q);

// |{g : kappa*g = 0}|.
long long order_kappa_count(const AbelianGroup& g, long long kappa);

struct BoundReport {
    long long generated_size = 0;   // |<X>|
    long long kappa_count = 0;      // K
    long long group_order = 0;
    long long kappa = 0;
    long long x = 0;
    bool pass = false;              // |<X>| * K <= |G| * kappa^x
};

// Verifiable inequality |<X>| <= |G| * kappa^x / K.
BoundReport generated_bound_check(const AbelianGroup& g, long long kappa,
                                  const std::vector<GroupElement>& x);

// Indices of a length-m subsequence summing to 0 mod m, lexicographically
// smallest, or nothing. Existence is guaranteed for |seq| >= 2m-1.
std::optional<std::vector<int>> egz_witness(int m, const std::vector<int>& seq);

}  // namespace zsram
