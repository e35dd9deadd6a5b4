#include "thales/exact_io.hpp"

#include <cctype>
#include <string>

#include "thales/errors.hpp"

namespace thales {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("malformed number '" + std::string(whole) + "'");
  Integer v(std::string(s), 10);
  return negative ? Integer(-v) : v;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty number");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer n = parse_integer(trim(s.substr(0, slash)), s);
    const Integer d = parse_integer(trim(s.substr(slash + 1)), s);
    if (d == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  std::string_view mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    const Integer ev = parse_integer(s.substr(e + 1), s);
    if (!ev.fits_slong_p() || abs(ev) > 100000) throw InputError("exponent out of range in '" + std::string(s) + "'");
    exponent = ev.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long scale = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const std::string_view ip = mantissa.substr(0, dot);
    const std::string_view fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw InputError("malformed number '" + std::string(s) + "'");
    digits = std::string(ip) + std::string(fp);
    scale = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw InputError("malformed number '" + std::string(s) + "'");
    digits = std::string(mantissa);
  }
  Rational q{Integer(digits, 10)};
  const long shift = exponent - scale;
  if (shift > 0) q *= pow10(static_cast<unsigned long>(shift));
  if (shift < 0) q /= pow10(static_cast<unsigned long>(-shift));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

nlohmann::json to_json(const Constructible& x) {
  using nlohmann::json;
  if (x.is_rational()) return json{{"op", "rat"}, {"args", json::array({to_string(x.rational())})}};
  const Constructible a = x.a();
  const Constructible b = x.b();
  json root = {{"op", "sqrt"}, {"args", json::array({to_json(x.radical()->radicand())})}};
  json term = (b.is_rational() && b.rational() == 1) ? root : json{{"op", "mul"}, {"args", json::array({to_json(b), root})}};
  if (a.is_rational() && sgn(a.rational()) == 0) return term;
  return json{{"op", "add"}, {"args", json::array({to_json(a), term})}};
}

Constructible from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("op") || !j.contains("args") || !j["op"].is_string() || !j["args"].is_array())
    throw InputError("expression must be an object with string 'op' and array 'args'");
  const std::string op = j["op"].get<std::string>();
  const auto& args = j["args"];
  auto arity = [&](std::size_t n) {
    if (args.size() != n) throw InputError("op '" + op + "' expects " + std::to_string(n) + " argument(s)");
  };
  if (op == "rat") {
    arity(1);
    if (!args[0].is_string()) throw InputError("'rat' expects a string literal");
    return Constructible(parse_rational(args[0].get<std::string>()));
  }
  if (op == "neg") {
    arity(1);
    return -from_json(args[0]);
  }
  if (op == "sqrt") {
    arity(1);
    return sqrt(from_json(args[0]));
  }
  arity(2);
  const Constructible x = from_json(args[0]);
  const Constructible y = from_json(args[1]);
  if (op == "add") return x + y;
  if (op == "sub") return x - y;
  if (op == "mul") return x * y;
  if (op == "div") return x / y;
  throw InputError("unknown op '" + op + "'");
}

}  // namespace thales
