#include "epkit/group.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <span>

#include "epkit/errors.hpp"

namespace epkit {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

void identity_into(const GroupSpec& spec, std::span<int> out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic:
      out[0] = 0;
      return;
    case GroupSpec::Kind::Symmetric:
      std::iota(out.begin(), out.end(), 1);
      return;
    case GroupSpec::Kind::Product: {
      std::size_t off = 0;
      for (const auto& f : spec.factors()) {
        identity_into(f, out.subspan(off, f.payload_size()));
        off += f.payload_size();
      }
      return;
    }
  }
}

void multiply_into(const GroupSpec& spec, std::span<const int> a, std::span<const int> b,
                   std::span<int> out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: {
      const long long n = spec.degree();
      out[0] = static_cast<int>((static_cast<long long>(a[0]) + b[0]) % n);
      return;
    }
    case GroupSpec::Kind::Symmetric:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[b[i] - 1];
      return;
    case GroupSpec::Kind::Product: {
      std::size_t off = 0;
      for (const auto& f : spec.factors()) {
        const auto w = f.payload_size();
        multiply_into(f, a.subspan(off, w), b.subspan(off, w), out.subspan(off, w));
        off += w;
      }
      return;
    }
  }
}

void inverse_into(const GroupSpec& spec, std::span<const int> a, std::span<int> out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic:
      out[0] = a[0] == 0 ? 0 : spec.degree() - a[0];
      return;
    case GroupSpec::Kind::Symmetric:
      for (std::size_t i = 0; i < out.size(); ++i) out[a[i] - 1] = static_cast<int>(i) + 1;
      return;
    case GroupSpec::Kind::Product: {
      std::size_t off = 0;
      for (const auto& f : spec.factors()) {
        const auto w = f.payload_size();
        inverse_into(f, a.subspan(off, w), out.subspan(off, w));
        off += w;
      }
      return;
    }
  }
}

void canonical_into(const GroupSpec& spec, std::span<const int> raw, std::span<int> out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: {
      const int n = spec.degree();
      int r = raw[0] % n;
      if (r < 0) r += n;
      out[0] = r;
      return;
    }
    case GroupSpec::Kind::Symmetric: {
      const int n = spec.degree();
      std::vector<bool> seen(n + 1, false);
      for (std::size_t i = 0; i < raw.size(); ++i) {
        const int p = raw[i];
        if (p < 1 || p > n || seen[p]) {
          throw InvalidInput("not a permutation of 1.." + std::to_string(n));
        }
        seen[p] = true;
        out[i] = p;
      }
      return;
    }
    case GroupSpec::Kind::Product: {
      std::size_t off = 0;
      for (const auto& f : spec.factors()) {
        const auto w = f.payload_size();
        canonical_into(f, raw.subspan(off, w), out.subspan(off, w));
        off += w;
      }
      return;
    }
  }
}

void format_into(const GroupSpec& spec, std::span<const int> p, bool nested, std::string& out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic:
      out += std::to_string(p[0]);
      return;
    case GroupSpec::Kind::Symmetric:
      if (nested) out += '(';
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p[i]);
      }
      if (nested) out += ')';
      return;
    case GroupSpec::Kind::Product: {
      out += '[';
      std::size_t off = 0;
      bool first = true;
      for (const auto& f : spec.factors()) {
        if (!first) out += ',';
        first = false;
        format_into(f, p.subspan(off, f.payload_size()), true, out);
        off += f.payload_size();
      }
      out += ']';
      return;
    }
  }
}

class ElementParser {
 public:
  explicit ElementParser(std::string_view text) : text_(text) {}

  void parse(const GroupSpec& spec, bool nested, std::vector<int>& out) {
    switch (spec.kind()) {
      case GroupSpec::Kind::Cyclic:
        out.push_back(integer());
        return;
      case GroupSpec::Kind::Symmetric: {
        const bool paren = nested && peek() == '(';
        if (paren) expect('(');
        for (int i = 0; i < spec.degree(); ++i) {
          if (i) expect(',');
          out.push_back(integer());
        }
        if (paren) expect(')');
        return;
      }
      case GroupSpec::Kind::Product: {
        expect('[');
        bool first = true;
        for (const auto& f : spec.factors()) {
          if (!first) expect(',');
          first = false;
          parse(f, true, out);
        }
        expect(']');
        return;
      }
    }
  }

  void finish() {
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  int integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && text_[start] == '-')) fail("expected integer");
    const std::string digits(text_.substr(start, pos_ - start));
    try {
      return std::stoi(digits);
    } catch (const std::exception&) {
      fail("integer out of range");
    }
    return 0;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw InvalidInput("bad group element '" + std::string(text_) + "': " + why + " at offset " +
                       std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupSpec GroupSpec::cyclic(int n) {
  if (n < 1) throw InvalidInput("cyclic group requires n >= 1, got " + std::to_string(n));
  auto node = std::make_shared<Node>();
  node->kind = Kind::Cyclic;
  node->degree = n;
  node->payload_size = 1;
  node->order = static_cast<std::uint64_t>(n);
  return GroupSpec(std::move(node));
}

GroupSpec GroupSpec::symmetric(int n) {
  if (n < 1 || n > kMaxSymmetricDegree) {
    throw InvalidInput("symmetric group requires 1 <= n <= 8, got " + std::to_string(n));
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Symmetric;
  node->degree = n;
  node->payload_size = static_cast<std::size_t>(n);
  std::uint64_t order = 1;
  for (int i = 2; i <= n; ++i) order *= static_cast<std::uint64_t>(i);
  node->order = order;
  return GroupSpec(std::move(node));
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  if (factors.empty()) throw InvalidInput("product group requires at least one factor");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->degree = 0;
  node->payload_size = 0;
  node->order = 1;
  for (const auto& f : factors) {
    node->payload_size += f.payload_size();
    node->order = saturating_mul(node->order, f.order());
  }
  node->factors = std::move(factors);
  return GroupSpec(std::move(node));
}

std::string GroupSpec::name() const {
  switch (kind()) {
    case Kind::Cyclic:
      return "Z" + std::to_string(degree());
    case Kind::Symmetric:
      return "S" + std::to_string(degree());
    case Kind::Product: {
      std::string s;
      for (const auto& f : factors()) {
        if (!s.empty()) s += 'x';
        s += f.kind() == Kind::Product ? "(" + f.name() + ")" : f.name();
      }
      return s;
    }
  }
  return {};
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.degree() != b.degree()) return false;
  return a.factors() == b.factors();
}

GroupElement::GroupElement(GroupSpec spec, std::vector<int> payload)
    : spec_(std::move(spec)), payload_(std::move(payload)) {
  if (payload_.size() != spec_.payload_size()) {
    throw InvalidInput("payload size mismatch for group " + spec_.name());
  }
  std::vector<int> canon(payload_.size());
  canonical_into(spec_, payload_, canon);
  if (canon != payload_) throw InvalidInput("payload is not canonical for group " + spec_.name());
}

bool GroupElement::is_identity() const { return *this == identity(spec_); }

std::size_t GroupElement::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : payload_) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

GroupElement identity(const GroupSpec& spec) {
  std::vector<int> p(spec.payload_size());
  identity_into(spec, p);
  return GroupElement(GroupElement::Trusted{}, spec, std::move(p));
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.spec() != b.spec()) {
    throw InvalidInput("group mismatch: " + a.spec().name() + " vs " + b.spec().name());
  }
  std::vector<int> p(a.payload().size());
  multiply_into(a.spec(), a.payload(), b.payload(), p);
  return GroupElement(GroupElement::Trusted{}, a.spec(), std::move(p));
}

GroupElement inverse(const GroupElement& a) {
  std::vector<int> p(a.payload().size());
  inverse_into(a.spec(), a.payload(), p);
  return GroupElement(GroupElement::Trusted{}, a.spec(), std::move(p));
}

GroupElement canonical(const GroupSpec& spec, const std::vector<int>& raw) {
  if (raw.size() != spec.payload_size()) {
    throw InvalidInput("payload size mismatch for group " + spec.name());
  }
  std::vector<int> p(raw.size());
  canonical_into(spec, raw, p);
  return GroupElement(GroupElement::Trusted{}, spec, std::move(p));
}

std::vector<GroupElement> elements(const GroupSpec& spec, std::uint64_t limit) {
  if (spec.order() > limit) {
    throw GuardExceeded("group " + spec.name() + " has more than " + std::to_string(limit) +
                        " elements");
  }
  switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: {
      std::vector<GroupElement> out;
      for (int r = 0; r < spec.degree(); ++r) out.push_back(canonical(spec, {r}));
      return out;
    }
    case GroupSpec::Kind::Symmetric: {
      std::vector<int> p(spec.degree());
      std::iota(p.begin(), p.end(), 1);
      std::vector<GroupElement> out;
      do {
        out.push_back(canonical(spec, p));
      } while (std::next_permutation(p.begin(), p.end()));
      return out;
    }
    case GroupSpec::Kind::Product: {
      std::vector<std::vector<int>> partial{{}};
      for (const auto& f : spec.factors()) {
        const auto fe = elements(f, limit);
        std::vector<std::vector<int>> next;
        next.reserve(partial.size() * fe.size());
        for (const auto& prefix : partial) {
          for (const auto& e : fe) {
            auto p = prefix;
            p.insert(p.end(), e.payload().begin(), e.payload().end());
            next.push_back(std::move(p));
          }
        }
        partial = std::move(next);
      }
      std::vector<GroupElement> out;
      out.reserve(partial.size());
      for (const auto& p : partial) out.push_back(canonical(spec, p));
      return out;
    }
  }
  return {};
}

GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic: {
      std::uniform_int_distribution<int> dist(0, spec.degree() - 1);
      return canonical(spec, {dist(rng)});
    }
    case GroupSpec::Kind::Symmetric: {
      std::vector<int> p(spec.degree());
      std::iota(p.begin(), p.end(), 1);
      for (int i = spec.degree() - 1; i > 0; --i) {
        std::uniform_int_distribution<int> dist(0, i);
        std::swap(p[i], p[dist(rng)]);
      }
      return canonical(spec, p);
    }
    case GroupSpec::Kind::Product: {
      std::vector<int> p;
      for (const auto& f : spec.factors()) {
        const auto e = random_element(f, rng);
        p.insert(p.end(), e.payload().begin(), e.payload().end());
      }
      return canonical(spec, p);
    }
  }
  return identity(spec);
}

std::string to_string(const GroupElement& e) {
  std::string out;
  format_into(e.spec(), e.payload(), false, out);
  return out;
}

GroupElement parse_element(const GroupSpec& spec, std::string_view text) {
  ElementParser parser(text);
  std::vector<int> raw;
  parser.parse(spec, false, raw);
  parser.finish();
  return canonical(spec, raw);
}

}  // namespace epkit
