#ifndef WODZICKI_REPORT_HPP_
#define WODZICKI_REPORT_HPP_

/* Manifests and machine-readable reports.
 *
 * A manifest pins everything a run depends on: dimension, the one-form
 * (either an explicit Fourier table or a seeded generator), an optional
 * expansion-floor override, the suite selection, and the output path.  A
 * report is a pure function of the manifest: no timestamps, no environment
 * data, insertion-ordered keys, so identical manifests serialize to
 * byte-identical reports regardless of the worker count.
 *
 * Exact scalars are serialized symbolically via their canonical string
 * form, never as floats; only entries produced by the floating-point
 * spectral oracle carry {value, uncertainty} doubles.  Each verification
 * entry names the statement it checks (a stable slug) and spells out the
 * asserted relation in words, so reports are auditable on their own.
 */

#include "wodzicki/forms.hpp"
#include "wodzicki/theorems.hpp"
#include "wodzicki/zeta.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wodzicki {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "wodzicki-report/1";

/* Malformed manifests map to the usage exit code, not the assertion one. */
struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* ---- manifest ---- */

struct Manifest {
  struct Mode {
    Frequency frequency;
    GaussianRational coefficient;
  };

  int dimension = 0;

  /* One-form source.  A non-empty Fourier table (one mode list per
   * component) takes precedence; otherwise the seeded generator runs with
   * the stated shape. */
  std::vector<std::vector<Mode>> components;
  std::uint64_t seed = 0;
  int max_frequency = 2;
  int modes = 3;

  std::optional<int> floor;         // integral-expression floor override
  std::vector<std::string> suites;  // empty = every applicable suite
  std::string output;               // empty = stdout only

  bool has_explicit_form() const { return !components.empty(); }
};

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"tadpole", "powers", "zeta0",
                                              "einstein", "parity", "alpha"};
  return names;
}

namespace detail {

inline ManifestError manifest_error(const std::string& what) {
  return ManifestError("manifest: " + what);
}

inline Rational manifest_rational(const Json& node, const std::string& where) {
  if (!node.is_string()) throw manifest_error(where + " must be a rational string like \"-3/2\"");
  try {
    return rational_from_string(node.get<std::string>());
  } catch (const std::exception&) {
    throw manifest_error(where + " is not a rational: \"" + node.get<std::string>() + "\"");
  }
}

inline void reject_unknown_keys(const Json& obj, const std::vector<std::string>& known,
                                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : known) ok = ok || it.key() == k;
    if (!ok) throw manifest_error("unknown key \"" + it.key() + "\" in " + where);
  }
}

inline int manifest_int(const Json& node, const std::string& where) {
  if (!node.is_number_integer()) throw manifest_error(where + " must be an integer");
  return node.get<int>();
}

} // namespace detail

inline Manifest manifest_from_json(const Json& j) {
  if (!j.is_object()) throw detail::manifest_error("top level must be an object");
  detail::reject_unknown_keys(
      j, {"dimension", "one_form", "floor", "suites", "output"}, "manifest");

  Manifest m;
  if (!j.contains("dimension")) throw detail::manifest_error("missing \"dimension\"");
  m.dimension = detail::manifest_int(j.at("dimension"), "\"dimension\"");
  if (m.dimension < 2) throw detail::manifest_error("\"dimension\" must be at least 2");

  if (j.contains("one_form")) {
    const Json& f = j.at("one_form");
    if (!f.is_object()) throw detail::manifest_error("\"one_form\" must be an object");
    if (f.contains("components")) {
      detail::reject_unknown_keys(f, {"components"}, "\"one_form\"");
      const Json& comps = f.at("components");
      if (!comps.is_array() || static_cast<int>(comps.size()) != m.dimension)
        throw detail::manifest_error("\"components\" needs exactly one mode list per dimension");
      for (const Json& list : comps) {
        if (!list.is_array()) throw detail::manifest_error("each component must be a mode array");
        std::vector<Manifest::Mode> out;
        for (const Json& entry : list) {
          if (!entry.is_object()) throw detail::manifest_error("each mode must be an object");
          detail::reject_unknown_keys(entry, {"frequency", "re", "im"}, "mode");
          if (!entry.contains("frequency") || !entry.at("frequency").is_array() ||
              static_cast<int>(entry.at("frequency").size()) != m.dimension)
            throw detail::manifest_error("each mode needs a \"frequency\" array of length d");
          Manifest::Mode mode;
          mode.frequency.reserve(entry.at("frequency").size());
          for (const Json& v : entry.at("frequency"))
            mode.frequency.push_back(detail::manifest_int(v, "frequency entry"));
          Rational re, im;
          if (entry.contains("re")) re = detail::manifest_rational(entry.at("re"), "\"re\"");
          if (entry.contains("im")) im = detail::manifest_rational(entry.at("im"), "\"im\"");
          mode.coefficient = GaussianRational(re, im);
          out.push_back(std::move(mode));
        }
        m.components.push_back(std::move(out));
      }
    } else {
      detail::reject_unknown_keys(f, {"seed", "max_frequency", "modes"}, "\"one_form\"");
      if (f.contains("seed")) {
        if (!f.at("seed").is_number_unsigned() && !f.at("seed").is_number_integer())
          throw detail::manifest_error("\"seed\" must be a non-negative integer");
        if (f.at("seed").is_number_integer() && f.at("seed").get<long long>() < 0)
          throw detail::manifest_error("\"seed\" must be a non-negative integer");
        m.seed = f.at("seed").get<std::uint64_t>();
      }
      if (f.contains("max_frequency")) {
        m.max_frequency = detail::manifest_int(f.at("max_frequency"), "\"max_frequency\"");
        if (m.max_frequency < 0) throw detail::manifest_error("\"max_frequency\" must be >= 0");
      }
      if (f.contains("modes")) {
        m.modes = detail::manifest_int(f.at("modes"), "\"modes\"");
        if (m.modes < 1) throw detail::manifest_error("\"modes\" must be >= 1");
      }
    }
  }

  if (j.contains("floor")) {
    int fl = detail::manifest_int(j.at("floor"), "\"floor\"");
    if (fl > -m.dimension)
      throw detail::manifest_error(
          "\"floor\" must not exceed -dimension (the residue term would be truncated away)");
    m.floor = fl;
  }

  if (j.contains("suites")) {
    if (!j.at("suites").is_array()) throw detail::manifest_error("\"suites\" must be an array");
    for (const Json& s : j.at("suites")) {
      if (!s.is_string()) throw detail::manifest_error("suite names must be strings");
      std::string name = s.get<std::string>();
      bool known = false;
      for (const auto& k : known_suites()) known = known || k == name;
      if (!known) throw detail::manifest_error("unknown suite \"" + name + "\"");
      bool dup = false;
      for (const auto& prev : m.suites) dup = dup || prev == name;
      if (!dup) m.suites.push_back(std::move(name));
    }
  }

  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw detail::manifest_error("\"output\" must be a string");
    m.output = j.at("output").get<std::string>();
  }
  return m;
}

inline Manifest manifest_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw detail::manifest_error("cannot open \"" + path + "\"");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw detail::manifest_error("invalid JSON in \"" + path + "\": " + e.what());
  }
  return manifest_from_json(j);
}

/* Builds the one-form and enforces the selfadjointness invariant; a gauge
 * perturbation that is not selfadjoint is a manifest error, not an input
 * the engine should silently accept. */
inline OneForm manifest_one_form(const Manifest& m) {
  if (!m.has_explicit_form())
    return random_selfadjoint_one_form(m.seed, m.dimension, m.max_frequency, m.modes);
  OneForm A(m.dimension);
  for (int k = 0; k < m.dimension; ++k)
    for (const auto& mode : m.components[static_cast<size_t>(k)])
      A.a[static_cast<size_t>(k)] += TrigPoly::mode(m.dimension, mode.frequency, mode.coefficient);
  if (!A.is_selfadjoint())
    throw detail::manifest_error(
        "one-form is not selfadjoint: every component must satisfy hat a(-l) == -conj(hat a(l))");
  return A;
}

/* Canonical echo of the manifest for embedding in reports (the output path
 * is omitted: it does not affect the computation). */
inline Json manifest_json(const Manifest& m) {
  Json j;
  j["dimension"] = m.dimension;
  Json f;
  if (m.has_explicit_form()) {
    Json comps = Json::array();
    for (const auto& list : m.components) {
      Json entries = Json::array();
      for (const auto& mode : list) {
        Json e;
        e["frequency"] = mode.frequency;
        e["re"] = to_string(mode.coefficient.re);
        e["im"] = to_string(mode.coefficient.im);
        entries.push_back(std::move(e));
      }
      comps.push_back(std::move(entries));
    }
    f["components"] = std::move(comps);
  } else {
    f["seed"] = m.seed;
    f["max_frequency"] = m.max_frequency;
    f["modes"] = m.modes;
  }
  j["one_form"] = std::move(f);
  if (m.floor) j["floor"] = *m.floor;
  if (!m.suites.empty()) j["suites"] = m.suites;
  return j;
}

/* ---- report entries ---- */

/* A verification entry: statement slug, input digest, the relation in
 * words, named exact values, and (when present) the named fully reduced
 * residual polynomials, each of which must print "0". */
inline Json report_json(const VerificationReport& rep) {
  Json j;
  j["kind"] = "verification";
  j["statement"] = rep.statement;
  j["inputs"] = rep.inputs;
  j["relation"] = rep.relation;
  Json values = Json::array();
  for (const auto& [name, v] : rep.values) {
    Json e;
    e["name"] = name;
    e["value"] = v.str();
    values.push_back(std::move(e));
  }
  j["values"] = std::move(values);
  if (!rep.reduced.empty()) {
    Json reduced = Json::array();
    for (const auto& [name, residual] : rep.reduced) {
      Json e;
      e["name"] = name;
      e["residual"] = residual;
      reduced.push_back(std::move(e));
    }
    j["reduced"] = std::move(reduced);
  }
  j["pass"] = rep.pass;
  return j;
}

/* An exact equality check on scalars. */
inline Json check_json(const std::string& name, const ExactScalar& got, const ExactScalar& want) {
  Json j;
  j["kind"] = "check";
  j["name"] = name;
  j["value"] = got.str();
  j["expected"] = want.str();
  j["pass"] = got == want;
  return j;
}

inline Json zero_check_json(const std::string& name, const ExactScalar& got) {
  return check_json(name, got, ExactScalar{});
}

/* A computed value with no asserted expectation. */
inline Json value_json(const std::string& name, const ExactScalar& v) {
  Json j;
  j["kind"] = "value";
  j["name"] = name;
  j["value"] = v.str();
  j["zero"] = v.is_zero();
  return j;
}

/* Floating-point oracle entries carry {value, uncertainty} doubles. */
inline Json estimate_json(const ResidueEstimate& est) {
  Json j;
  j["kind"] = "zeta-residue";
  j["dimension"] = est.d;
  j["pole"] = est.pole;
  j["estimate"] = est.value;
  j["uncertainty"] = est.uncertainty;
  j["converged"] = est.converged;
  return j;
}

inline Json calibration_json(const CalibrationReport& rep) {
  Json j;
  j["kind"] = "calibration";
  j["dimension"] = rep.d;
  j["exact"] = rep.exact.str();
  j["exact_value"] = rep.exact_value;
  Json oracle;
  oracle["value"] = rep.numeric;
  oracle["uncertainty"] = rep.uncertainty;
  j["oracle"] = std::move(oracle);
  j["relative_error"] = rep.rel_error;
  j["pass"] = rep.pass;
  return j;
}

/* ---- emission ---- */

inline std::string render_report(const Json& report) { return report.dump(2) + "\n"; }

/* Writes to stdout-like stream and, when the path is non-empty, to the
 * file as well; the two byte streams are identical. */
inline void emit_report(const Json& report, std::ostream& out, const std::string& path) {
  const std::string text = render_report(report);
  out << text;
  if (!path.empty()) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write report to \"" + path + "\"");
    file << text;
  }
}

} // namespace wodzicki

#endif // WODZICKI_REPORT_HPP_
