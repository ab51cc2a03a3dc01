#include "namevar/phonetic.hpp"

#include <algorithm>
#include <cstring>
#include <initializer_list>
#include <regex>
#include <vector>

namespace namevar {

namespace {

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// Collapse runs of identical characters to one.
std::string squeeze(std::string_view s) {
  std::string out;
  for (char c : s)
    if (out.empty() || out.back() != c) out.push_back(c);
  return out;
}

// Global fixed-string replacement, left to right, resuming after each
// replacement (the semantics of a global regex replace on a literal pattern).
std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  if (from.empty()) return s;
  std::string out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t hit = s.find(from, pos);
    if (hit == std::string::npos) break;
    out.append(s, pos, hit - pos);
    out.append(to);
    pos = hit + from.size();
  }
  out.append(s, pos, std::string::npos);
  return out;
}

bool upper_vowel_y(char c) { return std::strchr("AEIOUY", c) != nullptr; }
bool upper_vowel(char c) { return std::strchr("AEIOU", c) != nullptr; }

std::string pad4(std::string code) {
  code.resize(4, '0');
  return code;
}

// ---------------------------------------------------------------------------
// American Soundex (census variant): h/w are transparent, vowels separate
// duplicate codes, letter + 3 digits zero-padded.
// Digit classes: bfpv=1 cgjkqsxz=2 dt=3 l=4 mn=5 r=6.
// ---------------------------------------------------------------------------
char soundex_digit(char upper) {
  switch (upper) {
    case 'B': case 'F': case 'P': case 'V': return '1';
    case 'C': case 'G': case 'J': case 'K': case 'Q': case 'S': case 'X': case 'Z': return '2';
    case 'D': case 'T': return '3';
    case 'L': return '4';
    case 'M': case 'N': return '5';
    case 'R': return '6';
    case 'H': case 'W': return 'D';  // dropped before adjacency collapse
    default: return '0';             // vowels and y
  }
}

std::string soundex_code(const Name& name) {
  std::string up = to_upper(name);
  char first = up[0];
  std::string tail;
  for (std::size_t i = 1; i < up.size(); ++i) {
    char d = soundex_digit(up[i]);
    if (d != 'D') tail.push_back(d);
  }
  if (!tail.empty() && tail.front() == soundex_digit(first)) tail.erase(tail.begin());
  std::string digits;
  for (char c : squeeze(tail))
    if (c != '0') digits.push_back(c);
  return to_lower(pad4(first + digits));
}

// ---------------------------------------------------------------------------
// Modified Soundex: the refined digit table separating b/p, d/t, etc.
// (Apache commons-codec RefinedSoundex edition: every character coded,
// adjacent duplicates collapsed, vowels and h/w/y emit 0, no padding.)
// Table: a0 b1 c3 d6 e0 f2 g4 h0 i0 j4 k3 l7 m8 n8 o0 p1 q5 r9 s3 t6 u0 v2
//        w0 x5 y0 z5
// ---------------------------------------------------------------------------
char refined_digit(char lower) {
  static const char table[26 + 1] = "01360240043788015936020505";
  return table[lower - 'a'];
}

std::string modified_soundex_code(const Name& name) {
  std::string out(1, name[0]);
  char last = '*';
  for (char c : name) {
    char d = refined_digit(c);
    if (d != last) out.push_back(d);
    last = d;
  }
  return out;
}

// ---------------------------------------------------------------------------
// NYSIIS, original Taft (1970) rules in the common reference edition: suffix
// strips, head replacements, vowel folding to A, and H/W elisions, applied as
// ordered global substitutions; the key is first letter + squeezed remainder.
// ---------------------------------------------------------------------------
std::string nysiis_code(const Name& name) {
  static const std::vector<std::pair<std::regex, const char*>> first_rules = [] {
    std::vector<std::pair<std::regex, const char*>> v;
    v.emplace_back(std::regex("JR$"), "");
    v.emplace_back(std::regex("SR$"), "");
    v.emplace_back(std::regex("^MAC"), "MCC");
    v.emplace_back(std::regex("^KN"), "NN");
    v.emplace_back(std::regex("^K"), "C");
    v.emplace_back(std::regex("^(PH|PF)"), "FF");
    v.emplace_back(std::regex("^SCH"), "SSS");
    v.emplace_back(std::regex("(EE|IE)$"), "Y");
    v.emplace_back(std::regex("(DT|RT|R+D|N+T|N+D)$"), "D");
    return v;
  }();
  static const std::vector<std::pair<std::regex, const char*>> second_rules = [] {
    std::vector<std::pair<std::regex, const char*>> v;
    v.emplace_back(std::regex("EV"), "AF");
    v.emplace_back(std::regex("[EIOU]"), "A");
    v.emplace_back(std::regex("Q"), "G");
    v.emplace_back(std::regex("Z"), "S");
    v.emplace_back(std::regex("(M|KN)"), "N");
    v.emplace_back(std::regex("K"), "C");
    v.emplace_back(std::regex("SCH"), "SSS");
    v.emplace_back(std::regex("PH"), "FF");
    v.emplace_back(std::regex("([^A])H"), "$1");
    v.emplace_back(std::regex("(.)H[^A]"), "$1");
    v.emplace_back(std::regex("AW"), "A");
    v.emplace_back(std::regex("S$"), "");
    v.emplace_back(std::regex("AY$"), "Y");
    v.emplace_back(std::regex("A$"), "");
    return v;
  }();

  std::string up = to_upper(name);
  for (const auto& [re, repl] : first_rules) up = std::regex_replace(up, re, repl);
  if (up.empty()) return "";
  std::string first(1, up[0]);
  std::string rest = up.substr(1);
  for (const auto& [re, repl] : second_rules) rest = std::regex_replace(rest, re, repl);
  return to_lower(first + squeeze(rest));
}

// ---------------------------------------------------------------------------
// Phonex (Lait & Randell 1996). Preprocessing trims trailing S, folds KN/PH/WR
// heads, drops a leading H, and classes the initial letter; the body is coded
// with context-dependent digits. Variable-length code, no padding.
// ---------------------------------------------------------------------------
std::string phonex_code(const Name& name) {
  std::string up = to_upper(name);
  while (!up.empty() && up.back() == 'S') up.pop_back();
  if (up.size() >= 2) {
    std::string_view head(up.data(), 2);
    if (head == "KN") up = "N" + up.substr(2);
    else if (head == "PH") up = "F" + up.substr(2);
    else if (head == "WR") up = "R" + up.substr(2);
  }
  if (!up.empty() && up[0] == 'H') up.erase(up.begin());
  if (up.empty()) return "";

  static const std::pair<const char*, char> initials[] = {
      {"AEIOUY", 'A'}, {"BP", 'B'}, {"VF", 'F'}, {"KQC", 'C'}, {"JG", 'G'}, {"ZS", 'S'}};
  for (const auto& [letters, repl] : initials) {
    if (std::strchr(letters, up[0])) {
      up[0] = repl;
      break;
    }
  }

  std::string code(1, up[0]);
  char last = code.back();
  for (std::size_t i = 1; i < up.size(); ++i) {
    char letter = up[i];
    char next = i + 1 < up.size() ? up[i + 1] : '\0';
    char enc = '0';
    if (std::strchr("BPFV", letter)) {
      enc = '1';
    } else if (std::strchr("CSKGJQXZ", letter)) {
      enc = '2';
    } else if (letter == 'D' || letter == 'T') {
      if (next != 'C') enc = '3';
    } else if (letter == 'L') {
      if ((next && upper_vowel_y(next)) || i + 1 == up.size()) enc = '4';
    } else if (letter == 'M' || letter == 'N') {
      if (next == 'D' || next == 'G') up[i + 1] = letter;  // absorb the stop
      enc = '5';
    } else if (letter == 'R') {
      if ((next && upper_vowel_y(next)) || i + 1 == up.size()) enc = '6';
    }
    if (enc != last && enc != '0') code.push_back(enc);
    last = code.back();
  }
  return to_lower(code);
}

// ---------------------------------------------------------------------------
// Fuzzy Soundex (Holmes & McCabe 2002): q-gram substitutions, then a fuzzy
// digit translation (b/p/f/v=1, d/t=3, l=4, m/n=5, r=6, g/j/k/q/x=7, c/s/z=9,
// h/w/y dropped), squeeze, first letter restored, vowels removed. No padding.
// ---------------------------------------------------------------------------
char fuzzy_digit(char upper) {
  //                         ABCDEFGHIJKLMNOPQRSTUVWXYZ
  static const char table[] = "0193017-07745501769301-7-9";
  return table[upper - 'A'];
}

std::string fuzzy_soundex_code(const Name& name) {
  std::string up = to_upper(name);

  if (up.size() >= 2) {
    std::string_view head(up.data(), 2);
    std::string rest = up.substr(2);
    if (head == "CS" || head == "CZ" || head == "TS" || head == "TZ") up = "SS" + rest;
    else if (head == "GN") up = "NN" + rest;
    else if (head == "HR" || head == "WR") up = "RR" + rest;
    else if (head == "HW") up = "WW" + rest;
    else if (head == "KN" || head == "NG") up = "NN" + rest;
  }
  if (up.size() >= 3 && up.compare(up.size() - 3, 3, "RDT") == 0) {
    up = up.substr(0, up.size() - 3) + "RR";
  } else if (up.size() >= 2) {
    std::string_view tail(up.data() + up.size() - 2, 2);
    if (tail == "CH") up = up.substr(0, up.size() - 2) + "KK";
    else if (tail == "NT") up = up.substr(0, up.size() - 2) + "TT";
    else if (tail == "RT") up = up.substr(0, up.size() - 2) + "RR";
  }

  static const std::pair<const char*, const char*> rules[] = {
      {"CA", "KA"},  {"CC", "KK"},  {"CK", "KK"},  {"CE", "SE"},  {"CHL", "KL"},
      {"CL", "KL"},  {"CHR", "KR"}, {"CR", "KR"},  {"CI", "SI"},  {"CO", "KO"},
      {"CU", "KU"},  {"CY", "SY"},  {"DG", "GG"},  {"GH", "HH"},  {"MAC", "MK"},
      {"MC", "MK"},  {"NST", "NSS"}, {"PF", "FF"}, {"PH", "FF"},  {"SCH", "SSS"},
      {"TIO", "SIO"}, {"TIA", "SIO"}, {"TCH", "CHH"}};
  for (const auto& [from, to] : rules) up = replace_all(up, from, to);

  if (up.empty()) return "";
  char first = up[0];
  std::string code;
  for (char c : up) {
    char d = fuzzy_digit(c);
    if (d != '-') code.push_back(d);
  }
  code = squeeze(code);
  if (!code.empty()) code = std::string(1, first) + code.substr(1);
  else code = std::string(1, first);
  std::string out;
  for (char c : code)
    if (c != '0') out.push_back(c);
  return to_lower(out);
}

// ---------------------------------------------------------------------------
// Phonix (Gadd 1990). The substitution table below is the Pfeifer edition as
// carried by the Febrl / Text::Phonetic tradition; each rule has an anchor
// (anywhere / start / middle / end) and optional vowel-or-consonant
// constraints on the characters adjacent to the match. After substitution the
// name is coded like Soundex over the phonix digit classes (b/p=1 c/g/j/k/q=2
// d/t=3 l=4 m/n=5 r=6 f/v=7 s/x/z=8), leading vowel folded to 'v'.
// ---------------------------------------------------------------------------
enum class Where { anywhere, start, middle, end };
enum class Side { any, vowel, consonant, none };

struct PhonixRule {
  const char* from;
  const char* to;
  Where where;
  Side prev;
  Side next;
};

// clang-format off
const PhonixRule kPhonixRules[] = {
    {"DG", "G", Where::anywhere, Side::any, Side::any},
    {"CO", "KO", Where::anywhere, Side::any, Side::any},
    {"CA", "KA", Where::anywhere, Side::any, Side::any},
    {"CU", "KU", Where::anywhere, Side::any, Side::any},
    {"CY", "SI", Where::anywhere, Side::any, Side::any},
    {"CI", "SI", Where::anywhere, Side::any, Side::any},
    {"CE", "SE", Where::anywhere, Side::any, Side::any},
    {"CL", "KL", Where::start, Side::any, Side::vowel},
    {"CK", "K", Where::anywhere, Side::any, Side::any},
    {"GC", "K", Where::end, Side::any, Side::any},
    {"JC", "K", Where::end, Side::any, Side::any},
    {"CHR", "KR", Where::start, Side::any, Side::vowel},
    {"CR", "KR", Where::start, Side::any, Side::vowel},
    {"WR", "R", Where::start, Side::any, Side::any},
    {"NC", "NK", Where::anywhere, Side::any, Side::any},
    {"CT", "KT", Where::anywhere, Side::any, Side::any},
    {"PH", "F", Where::anywhere, Side::any, Side::any},
    {"AA", "AR", Where::anywhere, Side::any, Side::any},
    {"SCH", "SH", Where::anywhere, Side::any, Side::any},
    {"BTL", "TL", Where::anywhere, Side::any, Side::any},
    {"GHT", "T", Where::anywhere, Side::any, Side::any},
    {"AUGH", "ARF", Where::anywhere, Side::any, Side::any},
    {"LJ", "LD", Where::middle, Side::vowel, Side::vowel},
    {"LOUGH", "LOW", Where::anywhere, Side::any, Side::any},
    {"Q", "KW", Where::start, Side::any, Side::any},
    {"KN", "N", Where::start, Side::any, Side::any},
    {"GN", "N", Where::end, Side::any, Side::any},
    {"GHN", "N", Where::anywhere, Side::any, Side::any},
    {"GNE", "N", Where::end, Side::any, Side::any},
    {"GHNE", "NE", Where::anywhere, Side::any, Side::any},
    {"GNES", "NS", Where::end, Side::any, Side::any},
    {"GN", "N", Where::start, Side::any, Side::any},
    {"GN", "N", Where::middle, Side::any, Side::consonant},
    {"PS", "S", Where::start, Side::any, Side::any},
    {"PT", "T", Where::start, Side::any, Side::any},
    {"CZ", "C", Where::start, Side::any, Side::any},
    {"WZ", "Z", Where::middle, Side::vowel, Side::any},
    {"CZ", "CH", Where::middle, Side::any, Side::any},
    {"LZ", "LSH", Where::anywhere, Side::any, Side::any},
    {"RZ", "RSH", Where::anywhere, Side::any, Side::any},
    {"Z", "S", Where::middle, Side::any, Side::vowel},
    {"ZZ", "TS", Where::anywhere, Side::any, Side::any},
    {"Z", "TS", Where::middle, Side::consonant, Side::any},
    {"HROUG", "REW", Where::anywhere, Side::any, Side::any},
    {"OUGH", "OF", Where::anywhere, Side::any, Side::any},
    {"Q", "KW", Where::middle, Side::vowel, Side::vowel},
    {"J", "Y", Where::middle, Side::vowel, Side::vowel},
    {"YJ", "Y", Where::start, Side::any, Side::vowel},
    {"GH", "G", Where::start, Side::any, Side::any},
    {"GH", "E", Where::end, Side::vowel, Side::any},
    {"CY", "S", Where::start, Side::any, Side::any},
    {"NX", "NKS", Where::anywhere, Side::any, Side::any},
    {"PF", "F", Where::start, Side::any, Side::any},
    {"DT", "T", Where::end, Side::any, Side::any},
    {"TL", "TIL", Where::end, Side::any, Side::any},
    {"DL", "DIL", Where::end, Side::any, Side::any},
    {"YTH", "ITH", Where::anywhere, Side::any, Side::any},
    {"TJ", "CH", Where::start, Side::any, Side::vowel},
    {"TSJ", "CH", Where::start, Side::any, Side::vowel},
    {"TS", "T", Where::start, Side::any, Side::vowel},
    {"WSK", "VSKIE", Where::middle, Side::vowel, Side::any},
    {"WSK", "VSKIE", Where::end, Side::vowel, Side::any},
    {"MN", "N", Where::start, Side::any, Side::vowel},
    {"PN", "N", Where::start, Side::any, Side::vowel},
    {"STL", "SL", Where::middle, Side::vowel, Side::any},
    {"STL", "SL", Where::end, Side::vowel, Side::any},
    {"TNT", "ENT", Where::end, Side::any, Side::any},
    {"EAUX", "OHS", Where::end, Side::any, Side::any},
    {"EXCI", "ECS", Where::anywhere, Side::any, Side::any},
    {"X", "ECS", Where::anywhere, Side::any, Side::any},
    {"NED", "ND", Where::end, Side::any, Side::any},
    {"JR", "DR", Where::anywhere, Side::any, Side::any},
    {"EE", "EA", Where::end, Side::any, Side::any},
    {"ZS", "S", Where::anywhere, Side::any, Side::any},
    {"R", "AH", Where::middle, Side::vowel, Side::consonant},
    {"HR", "AH", Where::middle, Side::vowel, Side::consonant},
    {"HR", "AH", Where::end, Side::vowel, Side::any},
    {"RE", "AR", Where::end, Side::any, Side::any},
    {"R", "AH", Where::end, Side::vowel, Side::any},
    {"LLE", "LE", Where::anywhere, Side::any, Side::any},
    {"LE", "ILE", Where::end, Side::consonant, Side::any},
    {"LES", "ILES", Where::end, Side::consonant, Side::any},
    {"E", "", Where::end, Side::any, Side::any},
    {"ES", "S", Where::end, Side::any, Side::any},
    {"MB", "M", Where::end, Side::vowel, Side::any},
    {"MPTS", "MPS", Where::anywhere, Side::any, Side::any},
    {"MPS", "MS", Where::anywhere, Side::any, Side::any},
    {"MPT", "MT", Where::anywhere, Side::any, Side::any},
};
// clang-format on

bool side_ok(const std::string& s, std::size_t matched_begin, std::size_t matched_end,
             Side prev, Side next) {
  if (prev != Side::any) {
    if (matched_begin == 0) return false;
    char p = s[matched_begin - 1];
    if (prev == Side::vowel && !upper_vowel(p)) return false;
    if (prev == Side::consonant && upper_vowel(p)) return false;
  }
  if (next != Side::any) {
    if (matched_end >= s.size()) return false;
    char n = s[matched_end];
    if (next == Side::vowel && !upper_vowel(n)) return false;
    if (next == Side::consonant && upper_vowel(n)) return false;
  }
  return true;
}

bool where_ok(Where where, std::size_t begin, std::size_t end, std::size_t len) {
  switch (where) {
    case Where::anywhere: return true;
    case Where::start: return begin == 0;
    case Where::middle: return begin > 0 && end < len;
    case Where::end: return end == len;
  }
  return false;
}

// One left-to-right pass per rule, resuming after each replacement.
std::string apply_phonix_rules(std::string up) {
  for (const auto& rule : kPhonixRules) {
    const std::size_t flen = std::strlen(rule.from);
    std::string out;
    std::size_t pos = 0;
    while (pos + flen <= up.size()) {
      if (up.compare(pos, flen, rule.from) == 0 &&
          where_ok(rule.where, pos, pos + flen, up.size()) &&
          side_ok(up, pos, pos + flen, rule.prev, rule.next)) {
        out.append(rule.to);
        pos += flen;
      } else {
        out.push_back(up[pos]);
        ++pos;
      }
    }
    out.append(up, pos, std::string::npos);
    up = std::move(out);
  }
  return up;
}

char phonix_digit(char upper) {
  switch (upper) {
    case 'B': case 'P': return '1';
    case 'C': case 'G': case 'J': case 'K': case 'Q': return '2';
    case 'D': case 'T': return '3';
    case 'L': return '4';
    case 'M': case 'N': return '5';
    case 'R': return '6';
    case 'F': case 'V': return '7';
    case 'S': case 'X': case 'Z': return '8';
    default: return '0';  // vowels, y, h, w
  }
}

std::string phonix_code(const Name& name) {
  std::string up = apply_phonix_rules(to_upper(name));
  if (up.empty()) return "v000";
  char first = upper_vowel_y(up[0]) ? 'V' : up[0];
  std::string tail;
  for (std::size_t i = 1; i < up.size(); ++i) tail.push_back(phonix_digit(up[i]));
  // dedupe against the original initial's class, not the folded 'V'
  if (!tail.empty() && tail.front() == phonix_digit(up[0])) tail.erase(tail.begin());
  std::string digits;
  for (char c : squeeze(tail))
    if (c != '0') digits.push_back(c);
  return to_lower(pad4(first + digits));
}

// ---------------------------------------------------------------------------
// Double Metaphone, Philips 2000, in the commons-codec edition; primary and
// alternate codes capped at 4 characters.
// ---------------------------------------------------------------------------
struct DmResult {
  std::string primary, alternate;
  static constexpr std::size_t kMax = 4;
  void add(char p) { add(p, p); }
  void add(char p, char a) {
    if (primary.size() < kMax) primary.push_back(p);
    if (alternate.size() < kMax) alternate.push_back(a);
  }
  void add(const char* p) { add(p, p); }
  void add(const char* p, const char* a) {
    for (const char* c = p; *c && primary.size() < kMax; ++c) primary.push_back(*c);
    for (const char* c = a; *c && alternate.size() < kMax; ++c) alternate.push_back(*c);
  }
  void add_primary(char p) {
    if (primary.size() < kMax) primary.push_back(p);
  }
  void add_alternate(char a) {
    if (alternate.size() < kMax) alternate.push_back(a);
  }
  bool complete() const { return primary.size() >= kMax && alternate.size() >= kMax; }
};

struct DoubleMetaphone {
  const std::string& v;
  explicit DoubleMetaphone(const std::string& value) : v(value) {}

  char at(int i) const {
    if (i < 0 || i >= static_cast<int>(v.size())) return '\0';
    return v[static_cast<std::size_t>(i)];
  }
  static bool vowel(char c) { return c && std::strchr("AEIOUY", c); }
  bool contains(int start, int len, std::initializer_list<const char*> pats) const {
    if (start < 0 || start + len > static_cast<int>(v.size())) return false;
    std::string_view target(v.data() + start, static_cast<std::size_t>(len));
    for (const char* p : pats)
      if (target == p) return true;
    return false;
  }
  bool slavo_germanic() const {
    return v.find('W') != std::string::npos || v.find('K') != std::string::npos ||
           v.find("CZ") != std::string::npos || v.find("WITZ") != std::string::npos;
  }
  bool silent_start() const {
    for (const char* p : {"GN", "KN", "PN", "WR", "PS"})
      if (v.rfind(p, 0) == 0) return true;
    return false;
  }
  int last() const { return static_cast<int>(v.size()) - 1; }

  bool condition_c0(int i) const {
    if (contains(i, 4, {"CHIA"})) return true;
    if (i <= 1) return false;
    if (vowel(at(i - 2))) return false;
    if (!contains(i - 1, 3, {"ACH"})) return false;
    char c = at(i + 2);
    return (c != 'I' && c != 'E') || contains(i - 2, 6, {"BACHER", "MACHER"});
  }

  int handle_c(DmResult& r, int i) const {
    if (condition_c0(i)) {
      r.add('K');
      return i + 2;
    }
    if (i == 0 && contains(i, 6, {"CAESAR"})) {
      r.add('S');
      return i + 2;
    }
    if (contains(i, 2, {"CH"})) return handle_ch(r, i);
    if (contains(i, 2, {"CZ"}) && !contains(i - 2, 4, {"WICZ"})) {
      r.add('S', 'X');
      return i + 2;
    }
    if (contains(i + 1, 3, {"CIA"})) {
      r.add('X');
      return i + 3;
    }
    if (contains(i, 2, {"CC"}) && !(i == 1 && at(0) == 'M')) return handle_cc(r, i);
    if (contains(i, 2, {"CK", "CG", "CQ"})) {
      r.add('K');
      return i + 2;
    }
    if (contains(i, 2, {"CI", "CE", "CY"})) {
      if (contains(i, 3, {"CIO", "CIE", "CIA"})) r.add('S', 'X');
      else r.add('S');
      return i + 2;
    }
    r.add('K');
    if (contains(i + 1, 2, {" C", " Q", " G"})) return i + 3;
    if (contains(i + 1, 1, {"C", "K", "Q"}) && !contains(i + 1, 2, {"CE", "CI"})) return i + 2;
    return i + 1;
  }

  int handle_cc(DmResult& r, int i) const {
    if (contains(i + 2, 1, {"I", "E", "H"}) && !contains(i + 2, 2, {"HU"})) {
      if ((i == 1 && at(i - 1) == 'A') || contains(i - 1, 5, {"UCCEE", "UCCES"})) r.add("KS");
      else r.add('X');
      return i + 3;
    }
    r.add('K');
    return i + 2;
  }

  bool condition_ch0(int i) const {
    if (i != 0) return false;
    if (!contains(i + 1, 5, {"HARAC", "HARIS"}) && !contains(i + 1, 3, {"HOR", "HYM", "HIA", "HEM"}))
      return false;
    return !contains(0, 5, {"CHORE"});
  }
  bool condition_ch1(int i) const {
    return contains(0, 4, {"VAN ", "VON "}) || contains(0, 3, {"SCH"}) ||
           contains(i - 2, 6, {"ORCHES", "ARCHIT", "ORCHID"}) || contains(i + 2, 1, {"T", "S"}) ||
           ((contains(i - 1, 1, {"A", "O", "U", "E"}) || i == 0) &&
            (contains(i + 2, 1, {"L", "R", "N", "M", "B", "H", "F", "V", "W", " "}) ||
             i + 1 == last()));
  }
  int handle_ch(DmResult& r, int i) const {
    if (i > 0 && contains(i, 4, {"CHAE"})) {
      r.add('K', 'X');
      return i + 2;
    }
    if (condition_ch0(i) || condition_ch1(i)) {
      r.add('K');
      return i + 2;
    }
    if (i > 0) {
      if (contains(0, 2, {"MC"})) r.add('K');
      else r.add('X', 'K');
    } else {
      r.add('X');
    }
    return i + 2;
  }

  int handle_d(DmResult& r, int i) const {
    if (contains(i, 2, {"DG"})) {
      if (contains(i + 2, 1, {"I", "E", "Y"})) {
        r.add('J');
        return i + 3;
      }
      r.add("TK");
      return i + 2;
    }
    if (contains(i, 2, {"DT", "DD"})) {
      r.add('T');
      return i + 2;
    }
    r.add('T');
    return i + 1;
  }

  int handle_g(DmResult& r, int i, bool sg) const {
    if (at(i + 1) == 'H') return handle_gh(r, i);
    if (at(i + 1) == 'N') {
      if (i == 1 && vowel(at(0)) && !sg) r.add("KN", "N");
      else if (!contains(i + 2, 2, {"EY"}) && at(i + 1) != 'Y' && !sg) r.add("N", "KN");
      else r.add("KN");
      return i + 2;
    }
    if (contains(i + 1, 2, {"LI"}) && !sg) {
      r.add("KL", "L");
      return i + 2;
    }
    if (i == 0 &&
        (at(i + 1) == 'Y' || contains(i + 1, 2, {"ES", "EP", "EB", "EL", "EY", "IB", "IL", "IN",
                                                 "IE", "EI", "ER"}))) {
      r.add('K', 'J');
      return i + 2;
    }
    if ((contains(i + 1, 2, {"ER"}) || at(i + 1) == 'Y') &&
        !contains(0, 6, {"DANGER", "RANGER", "MANGER"}) && !contains(i - 1, 1, {"E", "I"}) &&
        !contains(i - 1, 3, {"RGY", "OGY"})) {
      r.add('K', 'J');
      return i + 2;
    }
    if (contains(i + 1, 1, {"E", "I", "Y"}) || contains(i - 1, 4, {"AGGI", "OGGI"})) {
      if (contains(0, 4, {"VAN ", "VON "}) || contains(0, 3, {"SCH"}) || contains(i + 1, 2, {"ET"}))
        r.add('K');
      else if (contains(i + 1, 3, {"IER"})) r.add('J');
      else r.add('J', 'K');
      return i + 2;
    }
    r.add('K');
    return at(i + 1) == 'G' ? i + 2 : i + 1;
  }

  int handle_gh(DmResult& r, int i) const {
    if (i > 0 && !vowel(at(i - 1))) {
      r.add('K');
      return i + 2;
    }
    if (i == 0) {
      r.add(at(i + 2) == 'I' ? 'J' : 'K');
      return i + 2;
    }
    if ((i > 1 && contains(i - 2, 1, {"B", "H", "D"})) ||
        (i > 2 && contains(i - 3, 1, {"B", "H", "D"})) ||
        (i > 3 && contains(i - 4, 1, {"B", "H"})))
      return i + 2;  // silent
    if (i > 2 && at(i - 1) == 'U' && contains(i - 3, 1, {"C", "G", "L", "R", "T"})) r.add('F');
    else if (i > 0 && at(i - 1) != 'I') r.add('K');
    return i + 2;
  }

  int handle_h(DmResult& r, int i) const {
    if ((i == 0 || vowel(at(i - 1))) && vowel(at(i + 1))) {
      r.add('H');
      return i + 2;
    }
    return i + 1;
  }

  int handle_j(DmResult& r, int i, bool sg) const {
    if (contains(i, 4, {"JOSE"}) || contains(0, 4, {"SAN "})) {
      if (i == 0 && at(i + 4) == ' ') r.add('H');
      else r.add('J', 'H');
      return i + 1;
    }
    if (i == 0 && !contains(i, 4, {"JOSE"})) {
      r.add('J', 'A');
    } else if (vowel(at(i - 1)) && !sg && (at(i + 1) == 'A' || at(i + 1) == 'O')) {
      r.add('J', 'H');
    } else if (i == last()) {
      r.add('J', ' ');
    } else if (!contains(i + 1, 1, {"L", "T", "K", "S", "N", "M", "B", "Z"}) &&
               !contains(i - 1, 1, {"S", "K", "L"})) {
      r.add('J');
    }
    return at(i + 1) == 'J' ? i + 2 : i + 1;
  }

  bool condition_l0(int i) const {
    if (i == static_cast<int>(v.size()) - 3 && contains(i - 1, 4, {"ILLO", "ILLA", "ALLE"}))
      return true;
    return (contains(static_cast<int>(v.size()) - 2, 2, {"AS", "OS"}) ||
            contains(static_cast<int>(v.size()) - 1, 1, {"A", "O"})) &&
           contains(i - 1, 4, {"ALLE"});
  }
  int handle_l(DmResult& r, int i) const {
    if (at(i + 1) == 'L') {
      if (condition_l0(i)) r.add_primary('L');
      else r.add('L');
      return i + 2;
    }
    r.add('L');
    return i + 1;
  }

  bool condition_m0(int i) const {
    if (at(i + 1) == 'M') return true;
    return contains(i - 1, 3, {"UMB"}) && (i + 1 == last() || contains(i + 2, 2, {"ER"}));
  }

  int handle_p(DmResult& r, int i) const {
    if (at(i + 1) == 'H') {
      r.add('F');
      return i + 2;
    }
    r.add('P');
    return contains(i + 1, 1, {"P", "B"}) ? i + 2 : i + 1;
  }

  int handle_r(DmResult& r, int i, bool sg) const {
    if (i == last() && !sg && contains(i - 2, 2, {"IE"}) && !contains(i - 4, 2, {"ME", "MA"}))
      r.add_alternate('R');
    else r.add('R');
    return at(i + 1) == 'R' ? i + 2 : i + 1;
  }

  int handle_sc(DmResult& r, int i) const {
    if (at(i + 2) == 'H') {
      if (contains(i + 3, 2, {"OO", "ER", "EN", "UY", "ED", "EM"})) {
        if (contains(i + 3, 2, {"ER", "EN"})) r.add("X", "SK");
        else r.add("SK");
      } else if (i == 0 && !vowel(at(3)) && at(3) != 'W') {
        r.add('X', 'S');
      } else {
        r.add('X');
      }
    } else if (contains(i + 2, 1, {"I", "E", "Y"})) {
      r.add('S');
    } else {
      r.add("SK");
    }
    return i + 3;
  }

  int handle_s(DmResult& r, int i, bool sg) const {
    if (contains(i - 1, 3, {"ISL", "YSL"})) return i + 1;
    if (i == 0 && contains(i, 5, {"SUGAR"})) {
      r.add('X', 'S');
      return i + 1;
    }
    if (contains(i, 2, {"SH"})) {
      if (contains(i + 1, 4, {"HEIM", "HOEK", "HOLM", "HOLZ"})) r.add('S');
      else r.add('X');
      return i + 2;
    }
    if (contains(i, 3, {"SIO", "SIA"}) || contains(i, 4, {"SIAN"})) {
      if (sg) r.add('S');
      else r.add('S', 'X');
      return i + 3;
    }
    if ((i == 0 && contains(i + 1, 1, {"M", "N", "L", "W"})) || contains(i + 1, 1, {"Z"})) {
      r.add('S', 'X');
      return contains(i + 1, 1, {"Z"}) ? i + 2 : i + 1;
    }
    if (contains(i, 2, {"SC"})) return handle_sc(r, i);
    if (i == last() && contains(i - 2, 2, {"AI", "OI"})) r.add_alternate('S');
    else r.add('S');
    return contains(i + 1, 1, {"S", "Z"}) ? i + 2 : i + 1;
  }

  int handle_t(DmResult& r, int i) const {
    if (contains(i, 4, {"TION"}) || contains(i, 3, {"TIA", "TCH"})) {
      r.add('X');
      return i + 3;
    }
    if (contains(i, 2, {"TH"}) || contains(i, 3, {"TTH"})) {
      if (contains(i + 2, 2, {"OM", "AM"}) || contains(0, 4, {"VAN ", "VON "}) ||
          contains(0, 3, {"SCH"}))
        r.add('T');
      else r.add('0', 'T');
      return i + 2;
    }
    r.add('T');
    return contains(i + 1, 1, {"T", "D"}) ? i + 2 : i + 1;
  }

  int handle_w(DmResult& r, int i) const {
    if (contains(i, 2, {"WR"})) {
      r.add('R');
      return i + 2;
    }
    if (i == 0 && (vowel(at(i + 1)) || contains(i, 2, {"WH"}))) {
      if (vowel(at(i + 1))) r.add('A', 'F');
      else r.add('A');
      return i + 1;
    }
    if ((i == last() && vowel(at(i - 1))) ||
        contains(i - 1, 5, {"EWSKI", "EWSKY", "OWSKI", "OWSKY"}) || contains(0, 3, {"SCH"})) {
      r.add_alternate('F');
      return i + 1;
    }
    if (contains(i, 4, {"WICZ", "WITZ"})) {
      r.add("TS", "FX");
      return i + 4;
    }
    return i + 1;
  }

  int handle_x(DmResult& r, int i) const {
    if (i == 0) {
      r.add('S');
      return i + 1;
    }
    if (!(i == last() && (contains(i - 3, 3, {"IAU", "EAU"}) || contains(i - 2, 2, {"AU", "OU"}))))
      r.add("KS");
    return contains(i + 1, 1, {"C", "X"}) ? i + 2 : i + 1;
  }

  int handle_z(DmResult& r, int i, bool sg) const {
    if (at(i + 1) == 'H') {
      r.add('J');
      return i + 2;
    }
    if (contains(i + 1, 2, {"ZO", "ZI", "ZA"}) || (sg && i > 0 && at(i - 1) != 'T'))
      r.add("S", "TS");
    else r.add('S');
    return at(i + 1) == 'Z' ? i + 2 : i + 1;
  }

  DmResult run() const {
    DmResult r;
    bool sg = slavo_germanic();
    int i = silent_start() ? 1 : 0;
    while (!r.complete() && i < static_cast<int>(v.size())) {
      char c = v[static_cast<std::size_t>(i)];
      switch (c) {
        case 'A': case 'E': case 'I': case 'O': case 'U': case 'Y':
          if (i == 0) r.add('A');
          ++i;
          break;
        case 'B':
          r.add('P');
          i += at(i + 1) == 'B' ? 2 : 1;
          break;
        case 'C': i = handle_c(r, i); break;
        case 'D': i = handle_d(r, i); break;
        case 'F':
          r.add('F');
          i += at(i + 1) == 'F' ? 2 : 1;
          break;
        case 'G': i = handle_g(r, i, sg); break;
        case 'H': i = handle_h(r, i); break;
        case 'J': i = handle_j(r, i, sg); break;
        case 'K':
          r.add('K');
          i += at(i + 1) == 'K' ? 2 : 1;
          break;
        case 'L': i = handle_l(r, i); break;
        case 'M':
          r.add('M');
          i += condition_m0(i) ? 2 : 1;
          break;
        case 'N':
          r.add('N');
          i += at(i + 1) == 'N' ? 2 : 1;
          break;
        case 'P': i = handle_p(r, i); break;
        case 'Q':
          r.add('K');
          i += at(i + 1) == 'Q' ? 2 : 1;
          break;
        case 'R': i = handle_r(r, i, sg); break;
        case 'S': i = handle_s(r, i, sg); break;
        case 'T': i = handle_t(r, i); break;
        case 'V':
          r.add('F');
          i += at(i + 1) == 'V' ? 2 : 1;
          break;
        case 'W': i = handle_w(r, i); break;
        case 'X': i = handle_x(r, i); break;
        case 'Z': i = handle_z(r, i, sg); break;
        default: ++i; break;
      }
    }
    return r;
  }
};

PhoneticCode double_metaphone_code(const Name& name) {
  std::string up = to_upper(name);
  DoubleMetaphone dm(up);
  DmResult r = dm.run();
  return {to_lower(r.primary), to_lower(r.alternate)};
}

}  // namespace

std::string_view method_name(PhoneticMethod m) {
  switch (m) {
    case PhoneticMethod::soundex: return "soundex";
    case PhoneticMethod::nysiis: return "nysiis";
    case PhoneticMethod::double_metaphone: return "double-metaphone";
    case PhoneticMethod::phonex: return "phonex";
    case PhoneticMethod::phonix: return "phonix";
    case PhoneticMethod::fuzzy_soundex: return "fuzzy-soundex";
    case PhoneticMethod::modified_soundex: return "modified-soundex";
  }
  return "";
}

std::optional<PhoneticMethod> method_from_name(std::string_view name) {
  for (PhoneticMethod m : kAllPhoneticMethods)
    if (method_name(m) == name) return m;
  // accept underscores as separators too
  std::string dashed(name);
  std::replace(dashed.begin(), dashed.end(), '_', '-');
  for (PhoneticMethod m : kAllPhoneticMethods)
    if (method_name(m) == dashed) return m;
  return std::nullopt;
}

PhoneticCode encode(PhoneticMethod m, const Name& name) {
  switch (m) {
    case PhoneticMethod::soundex: return {soundex_code(name), ""};
    case PhoneticMethod::nysiis: return {nysiis_code(name), ""};
    case PhoneticMethod::double_metaphone: return double_metaphone_code(name);
    case PhoneticMethod::phonex: return {phonex_code(name), ""};
    case PhoneticMethod::phonix: return {phonix_code(name), ""};
    case PhoneticMethod::fuzzy_soundex: return {fuzzy_soundex_code(name), ""};
    case PhoneticMethod::modified_soundex: return {modified_soundex_code(name), ""};
  }
  return {};
}

bool codes_match(PhoneticMethod m, const PhoneticCode& a, const PhoneticCode& b) {
  if (m != PhoneticMethod::double_metaphone) return a.primary == b.primary;
  return a.primary == b.primary || a.primary == b.alternate || a.alternate == b.primary ||
         a.alternate == b.alternate;
}

bool has_same_code(PhoneticMethod m, const Name& s, const Name& t) {
  return codes_match(m, encode(m, s), encode(m, t));
}

}  // namespace namevar
