#include "rtl/system.hpp"

namespace rtl {

bool SystemDescriptor::allows(Rule r) const {
  switch (r) {
    case Rule::Axiom: return true;
    case Rule::Lemma: return lemmas != LemmaPolicy::None;
    case Rule::Resolution: return (rules & rules::kRes) != 0;
    case Rule::WResolution: return (rules & rules::kWRes) != 0;
    case Rule::Weakening: return (rules & rules::kWeaken) != 0;
  }
  return false;
}

namespace {
struct Named {
  std::string_view name;
  SystemDescriptor sys;
};

const Named kNamed[] = {
    {"rt", SystemDescriptor::rt()},     {"rtl", SystemDescriptor::rtl()},
    {"rti", SystemDescriptor::rti()},   {"wrt", SystemDescriptor::wrt()},
    {"wrtl", SystemDescriptor::wrtl()}, {"wrti", SystemDescriptor::wrti()},
    {"rtw", SystemDescriptor::rtw()},   {"rtlw", SystemDescriptor::rtlw()},
    {"rd", SystemDescriptor::rd()},     {"any", SystemDescriptor::any()},
};
}  // namespace

std::string SystemDescriptor::name() const {
  SystemDescriptor base = *this;
  base.regular = false;
  base.max_lemma_size.reset();
  std::string out = "custom";
  for (const Named& n : kNamed)
    if (n.sys == base) {
      out = std::string(n.name);
      break;
    }
  if (regular) out = "reg" + out;
  if (max_lemma_size) out += "(" + std::to_string(*max_lemma_size) + ")";
  return out;
}

std::optional<SystemDescriptor> SystemDescriptor::from_name(std::string_view name) {
  bool regular = false;
  if (name.substr(0, 3) == "reg") {
    regular = true;
    name.remove_prefix(3);
  }
  for (const Named& n : kNamed)
    if (n.name == name) return n.sys.with_regular(regular);
  return std::nullopt;
}

}  // namespace rtl
