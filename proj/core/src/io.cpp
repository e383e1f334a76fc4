#include "apmeas/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "apmeas/error.hpp"
#include "json_emit.hpp"

namespace apmeas {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

namespace {

void emit(const json& j, std::string& out, int indent, int level) {
  auto newline = [&](int lvl) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(it.value(), out, indent, level + 1);
      }
      newline(level);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(level + 1);
        emit(e, out, indent, level + 1);
      }
      if (!flat) newline(level);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump17(const json& j, int indent) {
  std::string out;
  emit(j, out, indent, 0);
  return out;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

}  // namespace detail

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

cplx weight(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {num(j[0], where), num(j[1], where)};
  fail(where + ": expected a number or [re, im]");
}

std::vector<Atom> atom_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  std::vector<Atom> atoms;
  atoms.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& a = j[i];
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!a.is_array() || a.size() < 2 || a.size() > 3) fail(at + ": expected [pos, re] or [pos, re, im]");
    atoms.push_back({num(a[0], at), {num(a[1], at), a.size() == 3 ? num(a[2], at) : 0.0}});
  }
  return atoms;
}

SingularPiece piece(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  if (j.contains("cloud")) return SingularPiece::from_cloud(atom_list(j["cloud"], where + ".cloud"));
  if (!j.contains("ifs")) fail(where + ": needs \"ifs\" or \"cloud\"");
  const auto& f = j["ifs"];
  if (!f.is_array()) fail(where + ".ifs: expected an array");
  std::vector<IfsMap> maps;
  for (const auto& m : f) {
    if (!m.is_array() || m.size() != 3) fail(where + ".ifs: expected [ratio, offset, weight]");
    maps.push_back({num(m[0], where), num(m[1], where), num(m[2], where)});
  }
  const json depth = j.value("depth", json(8));
  if (!depth.is_number_integer()) fail(where + ".depth: expected an integer");
  const cplx mass = j.contains("mass") ? weight(j["mass"], where + ".mass") : cplx{1.0};
  try {
    return SingularPiece::from_ifs(std::move(maps), depth.get<int>(), mass);
  } catch (const Error& e) {
    fail(where + ": " + e.what());
  }
}

json atoms_json(const std::vector<Atom>& atoms) {
  json out = json::array();
  for (const auto& a : atoms) out.push_back(json::array({a.pos, a.weight.real(), a.weight.imag()}));
  return out;
}

}  // namespace

Measure measure_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  if (!j.is_object()) fail("measure: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    if (k != "pp" && k != "ac" && k != "sc" && k != "truncation" && k != "config" && k != "meta") {
      fail("measure: unknown key '" + k + "'");
    }
  }
  std::vector<Atom> atoms;
  if (j.contains("pp")) atoms = atom_list(j["pp"], "pp");

  DensityPart ac;
  if (j.contains("ac") && !j["ac"].is_null()) {
    const auto& a = j["ac"];
    if (!a.is_object()) fail("ac: expected an object");
    if (!a.contains("origin") || !a.contains("step") || !a.contains("samples")) fail("ac: needs origin, step, samples");
    const double origin = num(a["origin"], "ac.origin");
    const double step = num(a["step"], "ac.step");
    if (!(step > 0.0)) fail("ac.step: must be > 0");
    if (!a["samples"].is_array()) fail("ac.samples: expected an array");
    std::vector<cplx> samples;
    samples.reserve(a["samples"].size());
    for (const auto& s : a["samples"]) samples.push_back(weight(s, "ac.samples"));
    std::optional<ClosedInterval> clip;
    if (a.contains("clip") && !a["clip"].is_null()) {
      const auto& c = a["clip"];
      if (!c.is_array() || c.size() != 2) fail("ac.clip: expected [lo, hi]");
      clip = ClosedInterval{num(c[0], "ac.clip"), num(c[1], "ac.clip")};
    }
    ac = DensityPart(origin, step, std::move(samples), clip);
  }

  std::vector<SingularPiece> pieces;
  if (j.contains("sc") && !j["sc"].is_null()) {
    const auto& s = j["sc"];
    if (s.is_array()) {
      for (std::size_t i = 0; i < s.size(); ++i) pieces.push_back(piece(s[i], "sc[" + std::to_string(i) + "]"));
    } else {
      pieces.push_back(piece(s, "sc"));
    }
  }

  std::optional<Window> trunc;
  if (j.contains("truncation") && !j["truncation"].is_null()) {
    const auto& t = j["truncation"];
    if (!t.is_array() || t.size() != 2) fail("truncation: expected [lo, hi]");
    const double lo = num(t[0], "truncation");
    const double hi = num(t[1], "truncation");
    if (!(lo < hi)) fail("truncation: needs lo < hi");
    trunc = Window(lo, hi);
  }
  try {
    return Measure(PurePointPart(std::move(atoms)), std::move(ac), SingularPart(std::move(pieces)), trunc);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(std::string("measure: ") + e.what());
  }
}

std::string measure_to_json(const Measure& mu) {
  json j = json::object();
  j["pp"] = atoms_json(mu.pp().atoms());
  if (!mu.ac().empty()) {
    const auto& a = mu.ac();
    json samples = json::array();
    for (const auto& s : a.samples()) samples.push_back(detail::complex_json(s));
    json ac = {{"origin", a.origin()}, {"step", a.step()}, {"samples", std::move(samples)}};
    if (a.clip()) ac["clip"] = json::array({a.clip()->lo, a.clip()->hi});
    j["ac"] = std::move(ac);
  }
  if (!mu.sc().pieces().empty()) {
    json pieces = json::array();
    for (const auto& p : mu.sc().pieces()) {
      if (p.is_ifs()) {
        json maps = json::array();
        for (const auto& m : p.ifs) maps.push_back(json::array({m.ratio, m.offset, m.prob}));
        pieces.push_back({{"ifs", std::move(maps)}, {"depth", p.depth}, {"mass", detail::complex_json(p.mass)}});
      } else {
        pieces.push_back({{"cloud", atoms_json(p.cloud)}});
      }
    }
    j["sc"] = pieces.size() == 1 ? pieces[0] : pieces;
  }
  if (mu.truncation()) j["truncation"] = json::array({mu.truncation()->lo(), mu.truncation()->hi()});
  return detail::dump17(j) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

Measure read_measure(const std::filesystem::path& path) { return measure_from_json(read_text(path)); }

void write_measure(const std::filesystem::path& path, const Measure& mu) { write_text(path, measure_to_json(mu)); }

}  // namespace apmeas
