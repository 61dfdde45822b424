#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace epkit {

/// Description of a finite group: Z_n, Sym_n (n <= 8) or a direct product.
///
/// GroupSpec is an immutable value with shared storage, so copies are cheap
/// and elements can carry their spec around for mismatch detection.
class GroupSpec {
 public:
  enum class Kind { Cyclic, Symmetric, Product };

  static constexpr int kMaxSymmetricDegree = 8;

  static GroupSpec cyclic(int n);
  static GroupSpec symmetric(int n);
  static GroupSpec product(std::vector<GroupSpec> factors);

  Kind kind() const { return node_->kind; }
  // n for Cyclic / Symmetric, 0 for Product.
  int degree() const { return node_->degree; }
  const std::vector<GroupSpec>& factors() const { return node_->factors; }

  // Number of integers in the flat payload of an element.
  std::size_t payload_size() const { return node_->payload_size; }
  // Group order, saturating at UINT64_MAX.
  std::uint64_t order() const { return node_->order; }

  // Short human-readable name, e.g. "Z6", "S3", "Z2xS3".
  std::string name() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind = Kind::Cyclic;
    int degree = 1;
    std::vector<GroupSpec> factors;
    std::size_t payload_size = 1;
    std::uint64_t order = 1;
  };
  explicit GroupSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// An element of a GroupSpec in canonical form.
///
/// Payload layout: a residue in [0, n) for Z_n, the one-line image
/// (p(1), ..., p(n)) of a permutation for Sym_n, and the concatenation of the
/// factor payloads for products. Permutations compose right-to-left:
/// (a * b)(i) = a(b(i)).
class GroupElement {
 public:
  GroupElement(GroupSpec spec, std::vector<int> payload);

  const GroupSpec& spec() const { return spec_; }
  const std::vector<int>& payload() const { return payload_; }
  bool is_identity() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.payload_ == b.payload_ && a.spec_ == b.spec_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
  // Orders by payload; only meaningful between elements of the same spec.
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.payload_ < b.payload_;
  }

  std::size_t hash() const;

 private:
  struct Trusted {};
  GroupElement(Trusted, GroupSpec spec, std::vector<int> payload)
      : spec_(std::move(spec)), payload_(std::move(payload)) {}

  friend GroupElement identity(const GroupSpec& spec);
  friend GroupElement multiply(const GroupElement& a, const GroupElement& b);
  friend GroupElement inverse(const GroupElement& a);
  friend GroupElement canonical(const GroupSpec& spec, const std::vector<int>& raw);

  GroupSpec spec_;
  std::vector<int> payload_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& e) const { return e.hash(); }
};

GroupElement identity(const GroupSpec& spec);
// Throws InvalidInput when the operands belong to different groups.
GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) { return multiply(a, b); }

// Reduces residues modulo n and validates permutations. Idempotent.
GroupElement canonical(const GroupSpec& spec, const std::vector<int>& raw);
inline GroupElement canonical(const GroupElement& e) { return canonical(e.spec(), e.payload()); }

// Every element of the group, in lexicographic payload order for Z_n and
// products, lexicographic one-line order for Sym_n. Throws GuardExceeded
// above `limit` elements.
std::vector<GroupElement> elements(const GroupSpec& spec, std::uint64_t limit = 1'000'000);

GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng);

// Text encoding: "3" for Z_n, "2,3,1" for Sym_n, "[1,(2,3,1)]" for products.
std::string to_string(const GroupElement& e);
GroupElement parse_element(const GroupSpec& spec, std::string_view text);

}  // namespace epkit

template <>
struct std::hash<epkit::GroupElement> {
  std::size_t operator()(const epkit::GroupElement& e) const { return e.hash(); }
};
