#include "mpd/rational.hpp"

namespace mpd {

Rat rat_from_string(const std::string& s) {
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = t[0] == '-' ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };

  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) fail(Errc::MalformedInput, "bad rational '" + s + "'");
      return Rat(Int(s));
    }
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) fail(Errc::MalformedInput, "bad rational '" + s + "'");
    Int d(den);
    if (d == 0) fail(Errc::MalformedInput, "zero denominator in '" + s + "'");
    return Rat(Int(num), d);
  } catch (const std::exception& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(Errc::MalformedInput, "bad rational '" + s + "'");
  }
}

std::string rat_to_string(const Rat& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

}  // namespace mpd
