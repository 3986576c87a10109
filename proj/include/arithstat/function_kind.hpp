#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "arithstat/error.hpp"

namespace arithstat {

enum class KindTag : std::uint8_t {
  prime_indicator,
  twin_prime_indicator,
  squarefree_indicator,
  moebius,
  liouville,
  omega_equals,
  section4_weight,
  von_mangoldt,
};

/// Which arithmetic function a table or series holds.
///
/// `omega_equals(k)` is the indicator of "exactly k distinct prime divisors".
/// `section4_weight` is 2 on squarefree n with an even number of prime
/// factors, -1 on squarefree n with an odd number, and 0 otherwise.
class FunctionKind {
 public:
  constexpr FunctionKind(KindTag tag) : tag_(tag), k_(0) {  // NOLINT
    if (tag == KindTag::omega_equals)
      throw InvalidArgument("omega_equals needs a parameter k >= 1");
  }

  static FunctionKind omega_equals(unsigned k) {
    detail::require(k >= 1, "omega_equals requires k >= 1");
    FunctionKind kind(KindTag::prime_indicator);
    kind.tag_ = KindTag::omega_equals;
    kind.k_ = k;
    return kind;
  }

  constexpr KindTag tag() const noexcept { return tag_; }
  constexpr unsigned k() const noexcept { return k_; }

  constexpr bool is_indicator() const noexcept {
    switch (tag_) {
      case KindTag::prime_indicator:
      case KindTag::twin_prime_indicator:
      case KindTag::squarefree_indicator:
      case KindTag::omega_equals:
        return true;
      default:
        return false;
    }
  }

  /// All kinds except von Mangoldt take integer values from a fixed
  /// finite alphabet.
  constexpr bool is_integer_valued() const noexcept {
    return tag_ != KindTag::von_mangoldt;
  }
  constexpr bool has_finite_alphabet() const noexcept {
    return is_integer_valued();
  }

  /// The value alphabet, ascending. Empty for von Mangoldt.
  std::vector<int> alphabet() const {
    if (is_indicator()) return {0, 1};
    switch (tag_) {
      case KindTag::moebius:
        return {-1, 0, 1};
      case KindTag::liouville:
        return {-1, 1};
      case KindTag::section4_weight:
        return {-1, 0, 2};
      default:
        return {};
    }
  }

  constexpr int max_abs_value() const noexcept {
    return tag_ == KindTag::section4_weight ? 2 : 1;
  }

  std::string name() const {
    switch (tag_) {
      case KindTag::prime_indicator:
        return "prime_indicator";
      case KindTag::twin_prime_indicator:
        return "twin_prime_indicator";
      case KindTag::squarefree_indicator:
        return "squarefree_indicator";
      case KindTag::moebius:
        return "moebius";
      case KindTag::liouville:
        return "liouville";
      case KindTag::omega_equals:
        return "omega_equals:" + std::to_string(k_);
      case KindTag::section4_weight:
        return "section4_weight";
      case KindTag::von_mangoldt:
        return "von_mangoldt";
    }
    return "unknown";
  }

  /// Inverse of name(). Accepts "omega_equals:K".
  static FunctionKind parse(std::string_view text) {
    constexpr std::string_view omega_prefix = "omega_equals:";
    if (text.substr(0, omega_prefix.size()) == omega_prefix) {
      const std::string digits(text.substr(omega_prefix.size()));
      if (digits.empty() ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidArgument("bad omega_equals parameter: " + digits);
      return omega_equals(static_cast<unsigned>(std::stoul(digits)));
    }
    if (text == "prime_indicator") return KindTag::prime_indicator;
    if (text == "twin_prime_indicator") return KindTag::twin_prime_indicator;
    if (text == "squarefree_indicator") return KindTag::squarefree_indicator;
    if (text == "moebius") return KindTag::moebius;
    if (text == "liouville") return KindTag::liouville;
    if (text == "section4_weight") return KindTag::section4_weight;
    if (text == "von_mangoldt") return KindTag::von_mangoldt;
    throw InvalidArgument("unknown function kind: " + std::string(text));
  }

  friend constexpr bool operator==(const FunctionKind&,
                                   const FunctionKind&) = default;

 private:
  KindTag tag_;
  unsigned k_;
};

}  // namespace arithstat
