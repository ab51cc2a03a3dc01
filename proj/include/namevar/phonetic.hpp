// Seven phonetic encoders benchmarked by the pipeline, plus same-code testing.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "namevar/core.hpp"

namespace namevar {

enum class PhoneticMethod {
  soundex,
  nysiis,
  double_metaphone,
  phonex,
  phonix,
  fuzzy_soundex,
  modified_soundex,
};

inline constexpr std::array<PhoneticMethod, 7> kAllPhoneticMethods = {
    PhoneticMethod::soundex,        PhoneticMethod::nysiis,
    PhoneticMethod::double_metaphone, PhoneticMethod::phonex,
    PhoneticMethod::phonix,         PhoneticMethod::fuzzy_soundex,
    PhoneticMethod::modified_soundex,
};

std::string_view method_name(PhoneticMethod m);
std::optional<PhoneticMethod> method_from_name(std::string_view name);

struct PhoneticCode {
  std::string primary;
  std::string alternate;  // set by double metaphone only
  bool operator==(const PhoneticCode&) const = default;
};

// Codes are lowercase. Degenerate inputs whose rules consume the whole name
// (e.g. phonex of "s") yield an empty primary; every other path is nonempty.
PhoneticCode encode(PhoneticMethod m, const Name& name);

// True iff any code of s equals any code of t (double metaphone cross-matches
// primary and alternate).
bool codes_match(PhoneticMethod m, const PhoneticCode& a, const PhoneticCode& b);
bool has_same_code(PhoneticMethod m, const Name& s, const Name& t);

}  // namespace namevar
