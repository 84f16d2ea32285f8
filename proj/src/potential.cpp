#include "sturmkit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "sturmkit/error.hpp"
#include "sturmkit/format.hpp"

namespace sturmkit {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
  if (!(a < b)) throw DomainError("interval requires a < b, got [" + format_real(a) + ", " + format_real(b) + "]");
}

double Piece::level() const {
  if (const auto* c = std::get_if<Constant>(&kind)) return c->value;
  throw DomainError("piece on [" + format_real(left) + ", " + format_real(right) + "] is not constant");
}

double Piece::value(double t) const {
  if (const auto* c = std::get_if<Constant>(&kind)) return c->value;
  return std::get<Expression>(kind)(t);
}

PiecewisePotential::PiecewisePotential(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw SpecError("potential needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (!std::isfinite(p.left) || !std::isfinite(p.right))
      throw SpecError("piece " + std::to_string(i) + " has a non-finite endpoint");
    if (!(p.left < p.right))
      throw SpecError("piece " + std::to_string(i) + " is empty or reversed: [" + format_real(p.left) + ", " +
                      format_real(p.right) + "]");
    if (i > 0 && pieces_[i - 1].right != p.left) {
      const char* what = pieces_[i - 1].right < p.left ? "gap" : "overlap";
      throw SpecError(std::string(what) + " between pieces " + std::to_string(i - 1) + " and " + std::to_string(i));
    }
    if (p.is_constant() && !std::isfinite(p.level()))
      throw SpecError("piece " + std::to_string(i) + " has a non-finite level");
  }
}

PiecewisePotential PiecewisePotential::constant(double value, double a, double b) {
  return PiecewisePotential({Piece{a, b, Constant{value}}});
}

bool PiecewisePotential::all_constant() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.is_constant(); });
}

bool PiecewisePotential::constant_on(double from, double to) const {
  for (const Piece& p : pieces_) {
    if (from < to ? (p.right <= from || p.left >= to) : (p.right < from || p.left > to)) continue;
    if (!p.is_constant()) return false;
  }
  return true;
}

std::size_t PiecewisePotential::owner(double t) const {
  if (!(a() <= t && t <= b()))
    throw DomainError("t = " + format_real(t) + " outside [" + format_real(a()) + ", " + format_real(b()) + "]");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t, [](double x, const Piece& p) { return x < p.left; });
  return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
}

double PiecewisePotential::operator()(double t) const { return pieces_[owner(t)].value(t); }

std::vector<double> PiecewisePotential::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].left);
  return out;
}

double PiecewisePotential::sup_abs() const {
  double sup = 0.0;
  for (const Piece& p : pieces_) {
    if (p.is_constant()) {
      sup = std::max(sup, std::abs(p.level()));
      continue;
    }
    constexpr int kGrid = 10000;
    for (int i = 0; i <= kGrid; ++i) {
      const double t = p.left + (p.right - p.left) * i / kGrid;
      sup = std::max(sup, std::abs(p.value(t)));
    }
  }
  return sup;
}

double eval_potential(const PiecewisePotential& q, double t) { return q(t); }

namespace {

double read_abscissa(const json& v, const char* field, double b_value, bool allow_b) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (allow_b && s == "b") return b_value;
    try {
      return evaluate_constant(s);
    } catch (const SpecError& e) {
      throw SpecError(std::string("field '") + field + "': " + e.what(), e.position());
    }
  }
  throw SpecError(std::string("field '") + field + "' must be a number or a constant expression");
}

}  // namespace

PiecewisePotential parse_potential_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("potential spec syntax error: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!doc.is_object()) throw SpecError("potential spec must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "a" && key != "b" && key != "pieces") throw SpecError("unknown key '" + key + "' in potential spec");
  if (!doc.contains("a") || !doc.contains("b") || !doc.contains("pieces"))
    throw SpecError("potential spec requires keys 'a', 'b' and 'pieces'");

  const double a = read_abscissa(doc["a"], "a", 0.0, false);
  const double b = read_abscissa(doc["b"], "b", 0.0, false);
  if (!(a < b)) throw SpecError("potential spec requires a < b");
  const json& arr = doc["pieces"];
  if (!arr.is_array() || arr.empty()) throw SpecError("'pieces' must be a non-empty array");

  std::vector<Piece> pieces;
  double left = a;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    const std::string where = "piece " + std::to_string(i);
    if (!p.is_object()) throw SpecError(where + " must be an object");
    for (const auto& [key, _] : p.items())
      if (key != "to" && key != "const" && key != "expr") throw SpecError(where + ": unknown key '" + key + "'");
    if (!p.contains("to")) throw SpecError(where + " is missing 'to'");
    const bool has_const = p.contains("const");
    const bool has_expr = p.contains("expr");
    if (has_const == has_expr) throw SpecError(where + " needs exactly one of 'const' or 'expr'");

    const double right = read_abscissa(p["to"], "to", b, true);
    Piece piece{left, right, Constant{0.0}};
    if (has_const) {
      if (!p["const"].is_number()) throw SpecError(where + ": 'const' must be a number");
      piece.kind = Constant{p["const"].get<double>()};
    } else {
      if (!p["expr"].is_string()) throw SpecError(where + ": 'expr' must be a string");
      try {
        piece.kind = Expression::parse(p["expr"].get<std::string>());
      } catch (const SpecError& e) {
        throw SpecError(where + ": " + e.what(), e.position());
      }
    }
    pieces.push_back(std::move(piece));
    left = right;
  }
  if (left != b) throw SpecError(left < b ? "pieces end before b (gap)" : "pieces extend past b (overlap)");
  return PiecewisePotential(std::move(pieces));
}

std::string serialize_potential_spec(const PiecewisePotential& q) {
  std::string out = "{\"a\":" + format_real(q.a()) + ",\"b\":" + format_real(q.b()) + ",\"pieces\":[";
  const auto pieces = q.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (i > 0) out += ",";
    out += "{\"to\":";
    out += i + 1 == pieces.size() ? std::string("\"b\"") : format_real(p.right);
    if (p.is_constant()) out += ",\"const\":" + format_real(p.level());
    else out += ",\"expr\":" + json(std::get<Expression>(p.kind).text()).dump();
    out += "}";
  }
  out += "]}\n";
  return out;
}

PiecewisePotential build_theorem1_q2(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("theorem 1 construction requires 0 < epsilon < 1");
  const double level = (1.0 - epsilon) * (1.0 - epsilon);
  return PiecewisePotential({Piece{0.0, kPi - epsilon, Constant{1.0}}, Piece{kPi - epsilon, kPi, Constant{level}}});
}

DeltaConstruction build_delta_construction(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < kPi)) throw DomainError("delta construction requires 0 < epsilon < pi");
  const double delta = 0.5 * std::min(1.0, 2.0 * epsilon / (3.0 * kPi));
  return {delta, PiecewisePotential::constant(1.0 / (delta * delta), 0.0, kPi)};
}

LargeMConstruction build_large_M_construction(const PiecewisePotential& q1, const Interval& J) {
  if (!q1.domain().contains(J)) throw DomainError("J must lie inside the domain of q1");
  const double spacing_bound = 2.0 * kPi / J.length();
  const double M = std::max(q1.sup_abs(), spacing_bound * spacing_bound);
  return {M, PiecewisePotential::constant(M, q1.a(), q1.b())};
}

PiecewisePotential rescale_to_standard(const PiecewisePotential& q) {
  const double a = q.a();
  const double length = q.b() - a;
  const double scale = length / kPi;
  const double k = scale * scale;
  auto map = [&](double t) { return (t - a) * kPi / length; };

  std::vector<Piece> out;
  const auto pieces = q.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const double left = i == 0 ? 0.0 : out.back().right;
    const double right = i + 1 == pieces.size() ? kPi : map(p.right);
    if (p.is_constant()) out.push_back(Piece{left, right, Constant{k * p.level()}});
    else out.push_back(Piece{left, right, std::get<Expression>(p.kind).affine_substitute(k, a, scale)});
  }
  return PiecewisePotential(std::move(out));
}

}  // namespace sturmkit
