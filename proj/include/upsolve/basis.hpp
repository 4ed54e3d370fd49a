#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace upsolve {

enum class Var : unsigned char { W, Z };

inline Var complement(Var v) { return v == Var::W ? Var::Z : Var::W; }

/// One selected variable per complementary pair (w_i, z_i), indexed by pair.
class ComplementaryBasis {
 public:
  ComplementaryBasis() = default;
  explicit ComplementaryBasis(std::size_t h, Var fill = Var::W) : choice_(h, fill) {}
  explicit ComplementaryBasis(std::vector<Var> choice) : choice_(std::move(choice)) {}

  /// Parses the canonical key form, e.g. "wz" for {w1, z2}.
  static ComplementaryBasis from_key(std::string_view key) {
    std::vector<Var> c;
    c.reserve(key.size());
    for (char ch : key) {
      if (ch == 'w') {
        c.push_back(Var::W);
      } else if (ch == 'z') {
        c.push_back(Var::Z);
      } else {
        throw std::invalid_argument("basis key must consist of 'w' and 'z'");
      }
    }
    return ComplementaryBasis(std::move(c));
  }

  std::size_t size() const { return choice_.size(); }
  Var operator[](std::size_t i) const { return choice_.at(i); }
  bool is_z(std::size_t i) const { return choice_.at(i) == Var::Z; }
  void set(std::size_t i, Var v) { choice_.at(i) = v; }
  void flip(std::size_t i) { choice_.at(i) = complement(choice_.at(i)); }

  /// Column of G = [I | -M] holding the basic variable of pair i.
  std::size_t column(std::size_t i) const { return is_z(i) ? size() + i : i; }

  std::string key() const {
    std::string s;
    s.reserve(choice_.size());
    for (Var v : choice_) s.push_back(v == Var::W ? 'w' : 'z');
    return s;
  }

  /// Variable name of pair i's basic variable, 1-based ("w1", "z2").
  std::string name(std::size_t i) const { return (is_z(i) ? "z" : "w") + std::to_string(i + 1); }

  /// "{w1, z2}"
  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < choice_.size(); ++i) {
      if (i) s += ", ";
      s += name(i);
    }
    return s + "}";
  }

  friend bool operator==(const ComplementaryBasis&, const ComplementaryBasis&) = default;
  friend auto operator<=>(const ComplementaryBasis& a, const ComplementaryBasis& b) {
    return a.key() <=> b.key();
  }

 private:
  std::vector<Var> choice_;
};

}  // namespace upsolve
