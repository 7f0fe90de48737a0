#include "optiverse/config.hpp"

#include "optiverse/csv.hpp"
#include "optiverse/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace optiverse {

namespace {

struct Location
{
  int line;
  int column;
};

std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view v, Location loc, std::string const &key)
{
  double factor = 1.0;
  if (v.size() >= 2 && v.substr(v.size() - 2) == "pi") {
    factor = pi;
    v.remove_suffix(2);
    if (v.empty())
      return pi;
  }
  double out = 0.0;
  auto const res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError("parse", "'" + key + "' expects a number, got '" + std::string(v) + "'", loc.line, loc.column);
  return out * factor;
}

std::uint64_t parse_unsigned(std::string_view v, Location loc, std::string const &key)
{
  std::uint64_t out = 0;
  auto const res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("parse", "'" + key + "' expects a non-negative integer, got '" + std::string(v) + "'", loc.line,
                      loc.column);
  return out;
}

bool parse_bool(std::string_view v, Location loc, std::string const &key)
{
  if (v == "true")
    return true;
  if (v == "false")
    return false;
  throw ConfigError("parse", "'" + key + "' expects true or false", loc.line, loc.column);
}

// Runs a parser that reports DomainError and re-raises it at `loc`.
template <typename F> auto at(Location loc, F &&f)
{
  try {
    return f();
  } catch (DomainError const &e) {
    throw ConfigError(e.invariant(), e.message(), loc.line, loc.column);
  }
}

using Setter = std::function<void(std::string_view, Location, std::string const &)>;

} // namespace

MZIConfig ExperimentConfig::mzi() const
{
  MZIConfig m;
  m.scheme = run.scheme;
  m.piezo = run.piezo;
  m.n0 = probe.n0;
  m.eta = run.eta;
  m.medium = run.medium;
  m.sampling = run.sampling;
  m.seed = run.seed;
  return m;
}

Sweep ExperimentConfig::sweep(double cell_delta_phi) const
{
  Sweep s;
  s.kind = run.sweep.value_or(SweepKind::piezo);
  if (s.kind == SweepKind::piezo) {
    s.from = run.sweep_from.value_or(0.0);
    s.to = run.sweep_to.value_or(2.0 * pi);
  } else {
    s.from = run.sweep_from.value_or(0.01);
    s.to = run.sweep_to.value_or(0.1);
  }
  s.steps = run.sweep_steps;
  s.delta_phi = run.delta_phi.value_or(cell_delta_phi);
  return s;
}

void ExperimentConfig::validate() const
{
  at({0, 0}, [&] {
    spacetime.validate();
    return 0;
  });
  if (!(cell.L > 0.0))
    throw ConfigError("L>0", "cell length must be positive");
  if ((spacetime.kind == SpacetimeKind::dS || spacetime.kind == SpacetimeKind::dSBH) &&
      !(spacetime.H * cell.L < 2.0))
    throw ConfigError("HL<2", "H L = " + format_number(spacetime.H * cell.L) + " violates HL<2 for " +
                                std::string(to_string(spacetime.kind)));
  if (cell.grid_size < 2)
    throw ConfigError("grid_size>=2", "cell grid needs at least two points");
  if (!(std::abs(cell.theta) < 0.5 * pi) || !(std::cos(cell.theta) > 0.0))
    throw ConfigError("cos(theta)>0", "control-beam angle must satisfy |theta| < pi/2");
  if (!(cell.C > 0.0))
    throw ConfigError("C>0", "medium constant C must be positive");
  if (!(probe.lambda0 > 0.0))
    throw ConfigError("lambda0>0", "probe wavelength must be positive");
  if (!(run.eta >= 0.0 && run.eta <= 1.0))
    throw ConfigError("0<=eta<=1", "branch overlap eta must lie in [0, 1]");
  if (run.sweep_steps < 2)
    throw ConfigError("steps>=2", "a sweep needs at least two steps");
  if (run.sweep) {
    Sweep const s = sweep(0.0);
    if (!(s.to > s.from))
      throw ConfigError("sweep.range", "sweep_to must exceed sweep_from");
    if (s.kind == SweepKind::hubble && !(s.from >= 0.0 && s.to < 2.0))
      throw ConfigError("HL<2", "hubble sweep must stay within 0 <= H L < 2");
  }
  if (!(trace.b > 0.0))
    throw ConfigError("b>0", "impact parameter must be positive");
  if (trace.arc_budget && !(*trace.arc_budget > 0.0))
    throw ConfigError("ray.arc_budget", "arc budget must be positive");
  if (trace.capture_lo && trace.capture_hi && !(*trace.capture_hi > *trace.capture_lo))
    throw ConfigError("capture-bracket", "capture_hi must exceed capture_lo");
  if (!(redshift.t_emit <= redshift.t_obs))
    throw ConfigError("t_emit<=t_obs", "emission must not come after observation");
  if (output.run.empty() || output.run.find('/') != std::string::npos)
    throw ConfigError("output.run", "run name must be a non-empty file stem");
}

ExperimentConfig parse_config(std::string_view text)
{
  ExperimentConfig c;
  std::optional<double> H;
  std::optional<std::string> kind_name;
  std::optional<std::string> scale_form;
  std::optional<double> a0, t0, exponent;
  bool have_spacetime_section = false;

  std::map<std::string, std::map<std::string, Setter>> schema;
  auto num = [](double &dst) {
    return Setter([&dst](std::string_view v, Location l, std::string const &k) { dst = parse_double(v, l, k); });
  };
  auto opt_num = [](std::optional<double> &dst) {
    return Setter([&dst](std::string_view v, Location l, std::string const &k) { dst = parse_double(v, l, k); });
  };
  auto boolean = [](bool &dst) {
    return Setter([&dst](std::string_view v, Location l, std::string const &k) { dst = parse_bool(v, l, k); });
  };
  auto text_value = [](std::string &dst) {
    return Setter([&dst](std::string_view v, Location, std::string const &) { dst = std::string(v); });
  };
  auto opt_text = [](std::optional<std::string> &dst) {
    return Setter([&dst](std::string_view v, Location, std::string const &) { dst = std::string(v); });
  };

  schema["spacetime"] = {
    {"kind", opt_text(kind_name)}, {"H", opt_num(H)},         {"HL", opt_num(c.HL)},
    {"M", num(c.spacetime.M)},     {"scale_factor", opt_text(scale_form)},
    {"a0", opt_num(a0)},           {"t0", opt_num(t0)},       {"exponent", opt_num(exponent)},
  };
  schema["cell"] = {
    {"L", num(c.cell.L)},
    {"grid_size",
     [&](std::string_view v, Location l, std::string const &k) {
       c.cell.grid_size = static_cast<Eigen::Index>(parse_unsigned(v, l, k));
     }},
    {"theta", num(c.cell.theta)},
    {"C", num(c.cell.C)},
    {"profile_form",
     [&](std::string_view v, Location l, std::string const &) {
       c.cell.profile_form = at(l, [&] { return parse_profile_form(v); });
     }},
  };
  schema["probe"] = {
    {"lambda0", num(c.probe.lambda0)},
    {"n0", [&](std::string_view v, Location l, std::string const &k) { c.probe.n0 = parse_unsigned(v, l, k); }},
  };
  schema["run"] = {
    {"scheme",
     [&](std::string_view v, Location l, std::string const &) { c.run.scheme = at(l, [&] { return parse_scheme(v); }); }},
    {"sweep",
     [&](std::string_view v, Location l, std::string const &) {
       if (v == "none")
         c.run.sweep.reset();
       else
         c.run.sweep = at(l, [&] { return parse_sweep_kind(v); });
     }},
    {"sweep_from", opt_num(c.run.sweep_from)},
    {"sweep_to", opt_num(c.run.sweep_to)},
    {"sweep_steps",
     [&](std::string_view v, Location l, std::string const &k) {
       auto const s = parse_unsigned(v, l, k);
       if (s > 10'000'000)
         throw ConfigError("steps", "sweep_steps is unreasonably large", l.line, l.column);
       c.run.sweep_steps = static_cast<int>(s);
     }},
    {"delta_phi", opt_num(c.run.delta_phi)},
    {"piezo", num(c.run.piezo)},
    {"eta", num(c.run.eta)},
    {"medium",
     [&](std::string_view v, Location l, std::string const &) {
       c.run.medium = at(l, [&] { return parse_medium_state(v); });
     }},
    {"sampling",
     [&](std::string_view v, Location l, std::string const &) {
       c.run.sampling = at(l, [&] { return parse_sampling(v); });
     }},
    {"seed", [&](std::string_view v, Location l, std::string const &k) { c.run.seed = parse_unsigned(v, l, k); }},
  };
  schema["trace"] = {
    {"b", num(c.trace.b)},
    {"arc_budget", opt_num(c.trace.arc_budget)},
    {"capture_search", boolean(c.trace.capture_search)},
    {"capture_lo", opt_num(c.trace.capture_lo)},
    {"capture_hi", opt_num(c.trace.capture_hi)},
  };
  schema["redshift"] = {
    {"t_emit", num(c.redshift.t_emit)},
    {"t_obs", num(c.redshift.t_obs)},
  };
  schema["output"] = {
    {"directory", text_value(c.output.directory)},
    {"run", text_value(c.output.run)},
    {"emit_plots", boolean(c.output.emit_plots)},
  };

  std::string section;
  std::set<std::string> seen;
  std::set<std::string> seen_sections;
  Location kind_loc{0, 0};
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto const eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto const comment = raw.find_first_of("#;");
    std::string_view const content = trim(comment == std::string_view::npos ? raw : raw.substr(0, comment));
    if (content.empty())
      continue;
    int const indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (content.front() == '[') {
      if (content.back() != ']')
        throw ConfigError("parse", "unterminated section header", line_no, indent);
      section = std::string(trim(content.substr(1, content.size() - 2)));
      if (!schema.count(section))
        throw ConfigError("schema", "unknown section [" + section + "]", line_no, indent + 1);
      if (!seen_sections.insert(section).second)
        throw ConfigError("schema", "duplicate section [" + section + "]", line_no, indent);
      if (section == "spacetime")
        have_spacetime_section = true;
      continue;
    }

    auto const eq = content.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("parse", "expected 'key = value'", line_no, indent);
    if (section.empty())
      throw ConfigError("parse", "key outside of any section", line_no, indent);
    std::string const key(trim(content.substr(0, eq)));
    std::string_view const value = trim(content.substr(eq + 1));
    int const value_col = static_cast<int>(raw.find(value, raw.find('=') + 1)) + 1;

    auto const &keys = schema[section];
    auto const it = keys.find(key);
    if (it == keys.end())
      throw ConfigError("schema", "unknown key '" + key + "' in [" + section + "]", line_no, indent);
    if (!seen.insert(section + "." + key).second)
      throw ConfigError("schema", "duplicate key '" + key + "' in [" + section + "]", line_no, indent);
    if (value.empty())
      throw ConfigError("parse", "missing value for '" + key + "'", line_no, value_col);
    if (section == "spacetime" && key == "kind")
      kind_loc = {line_no, value_col};
    it->second(value, {line_no, value_col}, key);
  }

  if (!have_spacetime_section || !kind_name)
    throw ConfigError("schema", "[spacetime] kind is required");
  c.spacetime.kind = at(kind_loc, [&] { return parse_spacetime_kind(*kind_name); });

  if (H && c.HL)
    throw ConfigError("schema", "give either H or HL, not both");
  if (c.HL)
    c.spacetime.H = *c.HL / c.cell.L;
  else if (H)
    c.spacetime.H = *H;

  if (c.spacetime.kind == SpacetimeKind::RW) {
    auto form = at(kind_loc, [&] { return parse_scale_factor_form(scale_form.value_or("constant")); });
    switch (form) {
    case ScaleFactor::Form::exp:
      c.spacetime.scale_factor = ScaleFactor::exponential(c.spacetime.H);
      break;
    case ScaleFactor::Form::power_law:
      c.spacetime.scale_factor = ScaleFactor::power_law(t0.value_or(1.0), exponent.value_or(0.5));
      break;
    case ScaleFactor::Form::constant:
      c.spacetime.scale_factor = ScaleFactor::constant_value(a0.value_or(1.0));
      break;
    }
    bool const stray = (form != ScaleFactor::Form::constant && a0) ||
                       (form != ScaleFactor::Form::power_law && (t0 || exponent));
    if (stray)
      throw ConfigError("unused-parameter", "scale-factor parameters do not match scale_factor = " +
                                              std::string(to_string(form)));
  } else if (scale_form || a0 || t0 || exponent) {
    throw ConfigError("unused-parameter", "scale-factor keys are only valid for kind = RW");
  }

  c.validate();
  return c;
}

ExperimentConfig load_config(std::filesystem::path const &path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw ConfigError("config.file", "cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string effective_config(ExperimentConfig const &c)
{
  std::string out;
  auto kv = [&](std::string_view key, std::string const &value) {
    out += std::string(key) + " = " + value + "\n";
  };
  auto x = [](double v) { return format_exact(v); };

  out += "[spacetime]\n";
  kv("kind", std::string(to_string(c.spacetime.kind)));
  if (c.spacetime.uses_H()) {
    if (c.HL)
      kv("HL", x(*c.HL));
    else
      kv("H", x(c.spacetime.H));
  }
  if (c.spacetime.uses_M())
    kv("M", x(c.spacetime.M));
  if (c.spacetime.kind == SpacetimeKind::RW) {
    auto const &a = c.spacetime.scale_factor;
    kv("scale_factor", std::string(to_string(a.form)));
    if (a.form == ScaleFactor::Form::constant)
      kv("a0", x(a.value));
    if (a.form == ScaleFactor::Form::power_law) {
      kv("t0", x(a.t0));
      kv("exponent", x(a.exponent));
    }
  }

  out += "\n[cell]\n";
  kv("L", x(c.cell.L));
  kv("grid_size", std::to_string(c.cell.grid_size));
  kv("theta", x(c.cell.theta));
  kv("C", x(c.cell.C));
  kv("profile_form", std::string(to_string(c.cell.profile_form)));

  out += "\n[probe]\n";
  kv("lambda0", x(c.probe.lambda0));
  kv("n0", std::to_string(c.probe.n0));

  out += "\n[run]\n";
  kv("scheme", std::string(to_string(c.run.scheme)));
  kv("sweep", c.run.sweep ? std::string(to_string(*c.run.sweep)) : "none");
  if (c.run.sweep) {
    Sweep const s = c.sweep(0.0);
    kv("sweep_from", x(s.from));
    kv("sweep_to", x(s.to));
  }
  kv("sweep_steps", std::to_string(c.run.sweep_steps));
  if (c.run.delta_phi)
    kv("delta_phi", x(*c.run.delta_phi));
  kv("piezo", x(c.run.piezo));
  kv("eta", x(c.run.eta));
  kv("medium", std::string(to_string(c.run.medium)));
  kv("sampling", std::string(to_string(c.run.sampling)));
  kv("seed", std::to_string(c.run.seed));

  out += "\n[trace]\n";
  kv("b", x(c.trace.b));
  if (c.trace.arc_budget)
    kv("arc_budget", x(*c.trace.arc_budget));
  kv("capture_search", c.trace.capture_search ? "true" : "false");
  if (c.trace.capture_lo)
    kv("capture_lo", x(*c.trace.capture_lo));
  if (c.trace.capture_hi)
    kv("capture_hi", x(*c.trace.capture_hi));

  out += "\n[redshift]\n";
  kv("t_emit", x(c.redshift.t_emit));
  kv("t_obs", x(c.redshift.t_obs));

  out += "\n[output]\n";
  kv("directory", c.output.directory);
  kv("run", c.output.run);
  kv("emit_plots", c.output.emit_plots ? "true" : "false");
  return out;
}

} // namespace optiverse
