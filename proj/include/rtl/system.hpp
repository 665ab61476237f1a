#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "rtl/proof.hpp"

namespace rtl {

enum class Shape { Tree, Dag };
enum class LemmaPolicy { None, Any, InputOnly };

namespace rules {
inline constexpr unsigned kRes = 1u;
inline constexpr unsigned kWRes = 2u;
inline constexpr unsigned kWeaken = 4u;
}  // namespace rules

struct SystemDescriptor {
  Shape shape = Shape::Tree;
  LemmaPolicy lemmas = LemmaPolicy::None;
  unsigned rules = rules::kRes;
  bool regular = false;
  std::optional<std::size_t> max_lemma_size;

  bool allows(Rule r) const;

  static SystemDescriptor make(Shape shape, LemmaPolicy lemmas, unsigned rule_set) {
    SystemDescriptor s;
    s.shape = shape;
    s.lemmas = lemmas;
    s.rules = rule_set;
    return s;
  }
  static SystemDescriptor rt() { return {}; }
  static SystemDescriptor rtl() { return make(Shape::Tree, LemmaPolicy::Any, rules::kRes); }
  static SystemDescriptor rti() { return make(Shape::Tree, LemmaPolicy::InputOnly, rules::kRes); }
  static SystemDescriptor wrt() { return make(Shape::Tree, LemmaPolicy::None, rules::kRes | rules::kWRes); }
  static SystemDescriptor wrtl() { return make(Shape::Tree, LemmaPolicy::Any, rules::kRes | rules::kWRes); }
  static SystemDescriptor wrti() { return make(Shape::Tree, LemmaPolicy::InputOnly, rules::kRes | rules::kWRes); }
  static SystemDescriptor rtw() { return make(Shape::Tree, LemmaPolicy::None, rules::kRes | rules::kWeaken); }
  static SystemDescriptor rtlw(std::optional<std::size_t> k = std::nullopt) {
    SystemDescriptor s = make(Shape::Tree, LemmaPolicy::Any, rules::kRes | rules::kWeaken);
    s.max_lemma_size = k;
    return s;
  }
  static SystemDescriptor rd() { return make(Shape::Dag, LemmaPolicy::Any, rules::kRes); }
  // Everything the proof format can express.
  static SystemDescriptor any() {
    return make(Shape::Dag, LemmaPolicy::Any, rules::kRes | rules::kWRes | rules::kWeaken);
  }

  SystemDescriptor with_regular(bool r = true) const {
    SystemDescriptor s = *this;
    s.regular = r;
    return s;
  }
  SystemDescriptor with_max_lemma(std::size_t k) const {
    SystemDescriptor s = *this;
    s.max_lemma_size = k;
    return s;
  }

  // Short name such as "regwrti"; parse accepts the same names, with or
  // without the "reg" prefix.
  std::string name() const;
  static std::optional<SystemDescriptor> from_name(std::string_view name);

  bool operator==(const SystemDescriptor&) const = default;
};

}  // namespace rtl
