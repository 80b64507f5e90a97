// SPDX-License-Identifier: Apache-2.0
//
// qjacobi CLI: evaluate the polynomial families, run spectrum checks, verify
// identities from the catalog, and sweep parameter grids.
//
// Exit codes: 0 pass, 1 identity failure, 2 usage/domain error,
//             3 non-convergence, 4 eigensolver failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qjacobi/families.hpp"
#include "qjacobi/identities.hpp"
#include "qjacobi/qcore.hpp"
#include "qjacobi/registry.hpp"
#include "qjacobi/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace qjacobi;

namespace {

struct Output {
  std::string format = "human";  // human | json | csv
  std::string path;              // empty -> stdout
  bool timing = false;

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::string full = path;
    const char* dir = std::getenv("QJACOBI_OUT_DIR");
    if (dir && *dir && path.front() != '/') full = std::string(dir) + "/" + path;
    std::ofstream out(full);
    if (!out) throw DomainError("cannot open output path: " + full);
    out << text;
  }
};

json config_json(const std::string& command, const std::map<std::string, json>& fields,
                 const Output& out, double tolerance, int truncation, int matrix_size) {
  json cfg;
  cfg["command"] = command;
  for (const auto& [k, v] : fields) cfg[k] = v;
  cfg["tolerance"] = tolerance;
  cfg["truncation"] = truncation;
  cfg["matrix_size"] = matrix_size;
  cfg["output_format"] = out.format;
  return cfg;
}

json report_json(const IdentityReport& r, std::optional<double> wall_ms) {
  json j;
  j["identity_id"] = r.identity_id;
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["terms_used"] = r.terms_used;
  if (wall_ms) j["wall_ms"] = *wall_ms;
  return j;
}

std::string params_cell(const std::map<std::string, double>& params) {
  std::ostringstream os;
  bool first = true;
  os.precision(17);
  for (const auto& [k, v] : params) {
    if (!first) os << ';';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

std::string report_csv(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "identity_id,params,lhs,rhs,residual,tolerance,pass,terms_used\n";
  for (const auto& r : reports)
    os << r.identity_id << ",\"" << params_cell(r.params) << "\"," << r.lhs << ','
       << r.rhs << ',' << r.residual << ',' << r.tolerance << ','
       << (r.pass ? "true" : "false") << ',' << r.terms_used << '\n';
  return os.str();
}

std::string report_human(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-18s %s  residual %.3e (tol %.1e)  [%s]\n",
                  r.identity_id.c_str(), r.pass ? "PASS" : "FAIL", r.residual,
                  r.tolerance, params_cell(r.params).c_str());
    os << buf;
  }
  return os.str();
}

// Symbolic spectral points: 1, q^k, aq^k, cq^k (k defaults to 1 when omitted).
double parse_lambda_spec(const std::string& spec, double q, double a, double c) {
  if (spec == "1") return 1.0;
  std::string s = spec;
  double prefix = 1.0;
  size_t pos = 0;
  if (s[pos] == 'a') {
    prefix = a;
    ++pos;
  } else if (s[pos] == 'c') {
    prefix = c;
    ++pos;
  }
  if (pos >= s.size() || s[pos] != 'q')
    throw DomainError("bad --lambda-spec (expect 1, q^k, aq^k or cq^k): " + spec);
  ++pos;
  int k = 1;
  if (pos < s.size()) {
    if (s[pos] != '^') throw DomainError("bad --lambda-spec: " + spec);
    k = std::stoi(s.substr(pos + 1));
  }
  return prefix * std::pow(q, k);
}

std::vector<GridPoint> parse_grid(const std::string& spec) {
  if (spec == "default") return default_grid();
  std::map<char, std::vector<double>> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq != 1 || std::string("qabc").find(item[0]) == std::string::npos)
      throw DomainError("bad --grid entry (expect q=..;a=..;b=..;c=..): " + item);
    std::stringstream vs(item.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ','))
      if (!v.empty()) vals[item[0]].push_back(std::stod(v));
  }
  for (char k : {'q', 'a', 'b', 'c'})
    if (vals[k].empty()) throw DomainError(std::string("empty grid for parameter ") + k);
  std::vector<GridPoint> grid;
  for (double q : vals['q'])
    for (double a : vals['a'])
      for (double b : vals['b'])
        for (double c : vals['c']) grid.push_back({q, a, b, c});
  return grid;
}

std::vector<std::string> parse_ids(const std::string& spec) {
  if (spec == "all") return registry_ids();
  std::vector<std::string> ids;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (!registry_find(item)) {
      std::string msg = "unknown identity id: " + item + "\nvalid ids:";
      for (const auto& id : registry_ids()) msg += " " + id;
      throw DomainError(msg);
    }
    ids.push_back(item);
  }
  if (ids.empty()) throw DomainError("no identity ids given");
  return ids;
}

// --- subcommand handlers ------------------------------------------------------

int cmd_eval(const std::string& family, int n, std::optional<int> m,
             std::optional<double> lambda, const std::string& lambda_spec,
             std::optional<double> x_real, double q, double a, double b,
             std::optional<double> c, const std::string& method, const Output& out) {
  const QBase base(q);
  double point = 0.0, value = 0.0;
  const bool recurrence = method == "recurrence";
  if (family == "little" || family == "big") {
    if (!lambda && lambda_spec.empty())
      throw DomainError("eval " + family + ": need --lambda or --lambda-spec");
    const double lam =
        lambda ? *lambda : parse_lambda_spec(lambda_spec, q, a, c.value_or(0.0));
    point = lam;
    if (family == "little") {
      const LittleParams p(base, a, b);
      value = recurrence ? little_qjacobi_recur(n, lam, p) : little_qjacobi(n, lam, p);
    } else {
      if (!c) throw DomainError("eval big: need --c");
      const BigParams p(base, a, b, *c);
      value = recurrence ? big_qjacobi_recur(n, lam, p) : big_qjacobi(n, lam, p);
    }
  } else if (family == "dual-little") {
    if (!m) throw DomainError("eval dual-little: need --m");
    const LittleParams p(base, a, b);
    point = mu_lattice(*m, p).mu;
    value = recurrence ? dual_little_recur(n, *m, p) : dual_little(n, *m, p);
  } else if (family == "dual-big") {
    if (!m || !c) throw DomainError("eval dual-big: need --m and --c");
    const BigParams p(base, a, b, *c);
    point = mu_lattice(*m, p).mu;
    value = recurrence ? dual_big_recur(n, *m, p) : dual_big(n, *m, p);
  } else if (family == "asc2") {
    if (!m) throw DomainError("eval asc2: need --m (exponent of the lattice point)");
    point = std::pow(q, -*m);
    value = asc2(n, *m, a, base);
  } else if (family == "alt-qcharlier") {
    if (!x_real) throw DomainError("eval alt-qcharlier: need --x");
    point = *x_real;
    value = alt_qcharlier(n, *x_real, a, base);
  } else if (family == "alt-qcharlier-dual") {
    if (!m) throw DomainError("eval alt-qcharlier-dual: need --m");
    point = std::pow(q, -*m) - a * std::pow(q, *m);
    value = alt_qcharlier_dual(n, *m, a, base);
  } else {
    throw DomainError("unknown family: " + family);
  }

  if (out.format == "json") {
    json doc;
    doc["config"] = config_json(
        "eval", {{"family", family}, {"n", n}, {"q", q}, {"a", a}, {"b", b}}, out,
        1e-10, 200, 300);
    doc["rows"] = json::array(
        {json{{"family", family}, {"n", n}, {"point", point}, {"value", value}}});
    out.emit(doc.dump(2) + "\n");
  } else if (out.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "family,n,point,value\n"
       << family << ',' << n << ',' << point << ',' << value << '\n';
    out.emit(os.str());
  } else {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s n=%d at %.17g -> %.17g\n", family.c_str(), n,
                  point, value);
    out.emit(buf);
  }
  return 0;
}

int cmd_spectrum(const std::string& op, double q, double a, double b,
                 std::optional<double> c, int size, int top, double tolerance,
                 const Output& out) {
  const QBase base(q);
  SpectrumReport rep;
  if (op == "I1") {
    rep = verify_spectrum_I1(size, LittleParams(base, a, b), top, tolerance);
  } else if (op == "I2") {
    if (!c) throw DomainError("spectrum I2: need --c");
    rep = verify_spectrum_I2(size, BigParams(base, a, b, *c), top, tolerance);
  } else {
    throw DomainError("unknown operator (expect I1 or I2): " + op);
  }
  const bool pass = rep.max_abs_dev <= tolerance;

  if (out.format == "json") {
    json doc;
    doc["config"] = config_json("spectrum",
                                {{"op", op}, {"q", q}, {"a", a}, {"b", b},
                                 {"size", size}, {"top", top}},
                                out, tolerance, 200, size);
    doc["computed"] = rep.computed;
    doc["predicted"] = rep.predicted;
    json devs = json::array();
    for (size_t i = 0; i < rep.computed.size() && i < rep.predicted.size(); ++i)
      devs.push_back(std::abs(rep.computed[i] - rep.predicted[i]));
    doc["deviations"] = devs;
    doc["matched_count"] = rep.matched_count;
    doc["max_abs_dev"] = rep.max_abs_dev;
    doc["truncation_size"] = rep.truncation_size;
    doc["pass"] = pass;
    out.emit(doc.dump(2) + "\n");
  } else if (out.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "index,computed,predicted,deviation\n";
    for (size_t i = 0; i < rep.computed.size() && i < rep.predicted.size(); ++i)
      os << i << ',' << rep.computed[i] << ',' << rep.predicted[i] << ','
         << std::abs(rep.computed[i] - rep.predicted[i]) << '\n';
    out.emit(os.str());
  } else {
    std::ostringstream os;
    char buf[160];
    for (size_t i = 0; i < rep.computed.size() && i < rep.predicted.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%3zu  computed %.15g  predicted %.15g  dev %.3e\n",
                    i, rep.computed[i], rep.predicted[i],
                    std::abs(rep.computed[i] - rep.predicted[i]));
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "max deviation %.3e (tol %.1e) -> %s\n",
                  rep.max_abs_dev, tolerance, pass ? "PASS" : "FAIL");
    os << buf;
    out.emit(os.str());
  }
  return pass ? 0 : 1;
}

int cmd_verify(const std::vector<std::string>& ids, const std::vector<GridPoint>& grid,
               const VerifyOptions& opts, const Output& out, double cfg_tol) {
  std::vector<IdentityReport> reports;
  std::vector<std::optional<double>> times;
  bool all_pass = true;
  for (const auto& pt : grid) {
    for (const auto& id : ids) {
      const auto t0 = std::chrono::steady_clock::now();
      auto rs = run_identity(id, pt, opts);
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      for (auto& r : rs) {
        all_pass = all_pass && r.pass;
        reports.push_back(std::move(r));
        times.push_back(out.timing ? std::optional<double>(ms) : std::nullopt);
      }
    }
  }
  if (out.format == "json") {
    json doc;
    doc["config"] = config_json("verify", {{"ids", json(ids)}, {"points", grid.size()}},
                                out, cfg_tol, opts.truncation, opts.matrix_size);
    doc["reports"] = json::array();
    for (size_t i = 0; i < reports.size(); ++i)
      doc["reports"].push_back(report_json(reports[i], times[i]));
    doc["pass"] = all_pass;
    out.emit(doc.dump(2) + "\n");
  } else if (out.format == "csv") {
    out.emit(report_csv(reports));
  } else {
    out.emit(report_human(reports));
  }
  return all_pass ? 0 : 1;
}

int cmd_sweep(const std::vector<std::string>& ids, const std::vector<GridPoint>& grid,
              const VerifyOptions& opts, const Output& out, double cfg_tol) {
  struct Summary {
    double worst = -1.0;
    GridPoint worst_point;
    long passes = 0, fails = 0, skips = 0;
  };
  std::map<std::string, Summary> summary;
  json results = json::array();
  std::vector<IdentityReport> flat;
  bool any_fail = false;

  // identities that ignore c run once per (q, a, b) projection
  std::map<std::string, std::vector<std::array<double, 3>>> seen;

  for (const auto& pt : grid) {
    json point_entry;
    point_entry["point"] = {{"q", pt.q}, {"a", pt.a}, {"b", pt.b}, {"c", pt.c}};
    json point_reports = json::array();
    std::string status = "ok";
    std::string error;
    for (const auto& id : ids) {
      const auto* entry = registry_find(id);
      if (entry->needs != ParamNeeds::big) {
        auto& list = seen[id];
        const std::array<double, 3> key = {pt.q, pt.a, pt.b};
        if (std::find(list.begin(), list.end(), key) != list.end()) continue;
        list.push_back(key);
      }
      try {
        for (auto& r : run_identity(id, pt, opts)) {
          auto& s = summary[id];
          (r.pass ? s.passes : s.fails)++;
          if (!r.pass) any_fail = true;
          if (r.residual > s.worst) {
            s.worst = r.residual;
            s.worst_point = pt;
          }
          point_reports.push_back(report_json(r, std::nullopt));
          flat.push_back(std::move(r));
        }
      } catch (const DomainError& e) {
        summary[id].skips++;
        status = "skipped";
        error = e.what();
      } catch (const NonConvergence& e) {
        summary[id].skips++;
        status = "error";
        error = e.what();
      }
    }
    point_entry["status"] = status;
    if (!error.empty()) point_entry["error"] = error;
    point_entry["reports"] = std::move(point_reports);
    results.push_back(std::move(point_entry));
  }

  if (out.format == "json") {
    json doc;
    doc["config"] = config_json("sweep", {{"ids", json(ids)}, {"points", grid.size()}},
                                out, cfg_tol, opts.truncation, opts.matrix_size);
    doc["results"] = std::move(results);
    doc["summary"] = json::array();
    for (const auto& [id, s] : summary)
      doc["summary"].push_back({{"identity_id", id},
                                {"worst_residual", s.worst},
                                {"worst_point",
                                 {{"q", s.worst_point.q},
                                  {"a", s.worst_point.a},
                                  {"b", s.worst_point.b},
                                  {"c", s.worst_point.c}}},
                                {"passes", s.passes},
                                {"failures", s.fails},
                                {"skipped", s.skips}});
    doc["pass"] = !any_fail;
    out.emit(doc.dump(2) + "\n");
  } else if (out.format == "csv") {
    out.emit(report_csv(flat));
  } else {
    std::ostringstream os;
    char buf[256];
    for (const auto& [id, s] : summary) {
      std::snprintf(buf, sizeof buf,
                    "%-18s pass %4ld fail %4ld skip %3ld  worst %.3e at "
                    "q=%g a=%g b=%g c=%g\n",
                    id.c_str(), s.passes, s.fails, s.skips, s.worst, s.worst_point.q,
                    s.worst_point.a, s.worst_point.b, s.worst_point.c);
      os << buf;
    }
    out.emit(os.str());
  }
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"little/big q-Jacobi families, duals, spectra and identity checks"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --format/--output/--timing after the subcommand too

  Output out;
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--output", out.path, "write output to this path");
  app.add_flag("--timing", out.timing, "include wall_ms in JSON reports");

  double q = 0.5, a = 0.3, b = 0.4;
  std::optional<double> c;
  double tolerance_flag = -1.0;  // <0: use per-identity defaults
  int truncation = 200;
  int matrix_size = 300;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--q", q, "base in (0,1)");
    sub->add_option("--a", a, "parameter a");
    sub->add_option("--b", b, "parameter b");
    sub->add_option("--c", c, "parameter c (big family, < 0)");
  };

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate one family member");
  std::string family, lambda_spec, method = "series";
  int n = 0;
  std::optional<int> m;
  std::optional<double> lambda, x_real;
  eval->add_option("--family", family,
                   "little|big|dual-little|dual-big|asc2|alt-qcharlier|alt-qcharlier-dual")
      ->required();
  eval->add_option("--n", n, "degree")->required();
  eval->add_option("--m", m, "lattice index / exponent");
  eval->add_option("--lambda", lambda, "evaluation point");
  eval->add_option("--lambda-spec", lambda_spec, "symbolic point: 1, q^k, aq^k, cq^k");
  eval->add_option("--x", x_real, "real argument (alt-qcharlier)");
  eval->add_option("--method", method, "series|recurrence")
      ->check(CLI::IsMember({"series", "recurrence"}));
  add_params(eval);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "verify operator spectra");
  std::string op;
  int size = 300, top = 20;
  spectrum->add_option("--op", op, "I1|I2")->required();
  spectrum->add_option("--size", size, "truncation size");
  spectrum->add_option("--top", top, "eigenvalues compared (per sign branch for I2)");
  spectrum->add_option("--tolerance", tolerance_flag, "pass threshold");
  add_params(spectrum);

  // verify
  auto* verify = app.add_subcommand("verify", "run identity checks");
  std::string ids_spec, grid_spec;
  std::optional<double> t_flag;
  std::optional<int> x_flag, k_flag;
  verify->add_option("--id", ids_spec, "identity id list or 'all'")->required();
  verify->add_option("--grid", grid_spec, "'default' or q=..;a=..;b=..;c=..");
  verify->add_option("--tolerance", tolerance_flag, "override the id's tolerance");
  verify->add_option("--truncation", truncation, "series truncation");
  verify->add_option("--matrix-size", matrix_size, "connection-matrix truncation");
  verify->add_option("--t", t_flag, "generating-function parameter");
  verify->add_option("--x", x_flag, "lattice index");
  verify->add_option("--k", k_flag, "eta order cap");
  add_params(verify);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "cross-product identity runs over a grid");
  std::string sweep_ids = "all", sweep_grid = "default";
  sweep->add_option("--id", sweep_ids, "identity id list or 'all'");
  sweep->add_option("--grid", sweep_grid, "'default' or q=..;a=..;b=..;c=..");
  sweep->add_option("--tolerance", tolerance_flag, "override per-identity tolerances");
  sweep->add_option("--truncation", truncation, "series truncation");
  sweep->add_option("--matrix-size", matrix_size, "connection-matrix truncation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed())
      return cmd_eval(family, n, m, lambda, lambda_spec, x_real, q, a, b, c, method,
                      out);
    if (spectrum->parsed())
      return cmd_spectrum(op, q, a, b, c, size, top,
                          tolerance_flag > 0 ? tolerance_flag : 1e-10, out);

    VerifyOptions opts;
    if (tolerance_flag > 0) opts.tolerance = tolerance_flag;
    opts.truncation = truncation;
    opts.matrix_size = matrix_size;
    opts.t = t_flag;
    opts.x = x_flag;
    opts.k = k_flag;

    if (verify->parsed()) {
      const auto ids = parse_ids(ids_spec);
      std::vector<GridPoint> grid;
      if (grid_spec.empty())
        grid = {GridPoint{q, a, b, c.value_or(-0.2)}};
      else
        grid = parse_grid(grid_spec);
      return cmd_verify(ids, grid, opts, out,
                        tolerance_flag > 0 ? tolerance_flag : 1e-10);
    }
    if (sweep->parsed()) {
      const auto ids = parse_ids(sweep_ids);
      const auto grid = parse_grid(sweep_grid);
      if (grid.empty()) throw DomainError("empty grid");
      return cmd_sweep(ids, grid, opts, out,
                       tolerance_flag > 0 ? tolerance_flag : 1e-10);
    }
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const DenominatorPole& e) {
    std::cerr << "denominator pole: " << e.what() << "\n";
    return 3;
  } catch (const NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const EigensolverFailure& e) {
    std::cerr << "eigensolver failure: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
