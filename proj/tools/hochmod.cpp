#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hochmod/builders.hpp"
#include "hochmod/modular.hpp"

using namespace hochmod;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "hochmod-report/1";

// Exit codes.
constexpr int kOk = 0;
constexpr int kVerification = 1;
constexpr int kInput = 2;

struct Options {
  std::string verb;
  std::string preset;
  std::string input;
  std::string field;
  std::size_t degree = 0;
  std::vector<std::string> modules;
  std::string act;
  std::string cls;
  bool no_timing = false;
  std::string out;
};

class Timer {
 public:
  explicit Timer(json& sink) : sink_(sink) {}
  template <class Fn>
  decltype(auto) phase(const std::string& name, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    struct Record {
      json& sink;
      std::string name;
      std::chrono::steady_clock::time_point t0;
      ~Record() {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        sink[name] = ms;
      }
    } record{sink_, name, t0};
    return fn();
  }

 private:
  json& sink_;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return parts;
}

Sl2Matrix parse_act(const std::string& text) {
  auto parts = split_csv(text);
  if (parts.size() != 4) throw ParseError("expected four comma-separated integers", "--act");
  Sl2Matrix M{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t used = 0;
    try {
      M[i] = std::stoll(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != parts[i].size()) throw ParseError("not an integer: '" + parts[i] + "'", "--act");
  }
  return M;
}

json report_json(const Report& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json item{{"check", v.check}, {"basis", v.basis}};
    if (!v.lhs.empty()) item["lhs"] = v.lhs;
    if (!v.rhs.empty()) item["rhs"] = v.rhs;
    violations.push_back(std::move(item));
  }
  json out{{"name", r.name}, {"ok", r.ok()}, {"checks", r.checks}, {"failures", r.total_violations}};
  if (!violations.empty()) out["violations"] = std::move(violations);
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

template <class K>
json matrix_json(const Matrix<K>& m) {
  const K& F = m.field();
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(F.format(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class K>
json vector_json(const K& F, const Vec<K>& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!F.is_zero(v[i])) out.push_back(json::array({i, F.format(v[i])}));
  return out;
}

template <class K>
json values_json(const K& F, const std::vector<typename K::value_type>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(F.format(x));
  return out;
}

// The ledger collects every executed check; the run fails if any did.
struct Ledger {
  json entries = json::array();
  bool ok = true;
  void add(const Report& r) {
    entries.push_back(report_json(r));
    ok = ok && r.ok();
  }
};

RawPresentation load_raw(const Options& opt, const FieldSpec& field) {
  if (!opt.input.empty()) return read_presentation(opt.input);
  return with_field(field, [&](const auto& F) {
    auto raw = raw_from_hopf(build_preset(opt.preset, F));
    raw.source = "preset:" + opt.preset;
    return raw;
  });
}

template <class K>
Bimodule<K> module_by_name(const Hopf<K>& H, const std::string& name) {
  const auto& A = H.algebra();
  if (name == "regular") return regular_bimodule(A);
  if (name == "s2inv-dual") return dual_bimodule(twist_s2inv(H));
  if (name == "eps-ad") return twist_eps_ad(H, regular_bimodule(A));
  if (name == "eps-cad") return twist_eps_cad(H, regular_bimodule(A));
  throw ParseError("unknown module '" + name + "'", "--module");
}

template <class K>
json conventions_json(const LoadedPresentation<K>& lp) {
  const K& F = lp.data.hopf.field();
  json c;
  c["ribbon_convention"] = "v^2 = (u S(u))^-1, Delta(v) = Q (v (x) v)";
  if (!lp.rho_source.empty()) c["rho_source"] = lp.rho_source;
  if (lp.ribbon) {
    const auto& rd = *lp.ribbon;
    c["integral_convention"] = to_string(rd.convention);
    c["sentinel_class_function"] = rd.sentinel;
    c["v_source"] = rd.v_source;
    c["ribbon_candidates"] = rd.ribbon_candidates;
    c["v"] = vector_json(F, rd.v);
    c["rho"] = vector_json(F, rd.rho);
    c["rho_normalization"] = "rho(v) = 1";
  } else {
    c["integral_convention"] = to_string(IntegralConvention::right);
    c["ribbon_element"] = nullptr;
    c["ribbon_unavailable"] = lp.ribbon_error.empty() ? "structural verification failed" : lp.ribbon_error;
  }
  return c;
}

template <class K>
int run(const Options& opt, const RawPresentation& raw, const K& F, json& doc, json& timing) {
  Timer timer(timing);
  auto lp = timer.phase("load", [&] { return load_presentation(raw, F); });
  const auto& H = lp.data.hopf;
  doc["input"]["dim"] = H.dim();
  if (!lp.data.labels.empty()) doc["input"]["labels"] = lp.data.labels;
  doc["input"]["has_R"] = bool(lp.data.R);
  if (lp.factorizable) {
    doc["input"]["factorizable"] = lp.factorizable->factorizable;
    doc["input"]["factorizable_rank"] = lp.factorizable->rank;
  }
  doc["conventions"] = conventions_json(lp);
  Ledger ledger;
  ledger.add(lp.report);
  auto finish = [&](int code) {
    doc["verification"] = ledger.entries;
    doc["status"] = code == kOk ? "ok" : "verification failure";
    return code;
  };
  if (!lp.ok()) return finish(kVerification);

  if (opt.verb == "verify") {
    if (lp.ribbon) {
      auto cr = timer.phase("center relations", [&] { return check_center_relations(H, *lp.ribbon); });
      ledger.add(cr.report);
    }
    return finish(ledger.ok ? kOk : kVerification);
  }

  if (opt.verb == "hh") {
    std::vector<std::string> names{"regular"};
    for (const auto& m : opt.modules)
      if (std::find(names.begin(), names.end(), m) == names.end()) names.push_back(m);
    json modules = json::array();
    for (const auto& name : names) {
      auto M = module_by_name(H, name);
      CochainComplex<K> C(H.algebra(), M);
      json dims = json::array(), sizes = json::array();
      for (std::size_t n = 0; n <= opt.degree; ++n) {
        sizes.push_back(C.dim(long(n)));
        auto hh = timer.phase(name + " HH^" + std::to_string(n), [&] { return C.cohomology(long(n)); });
        dims.push_back(hh.dim());
      }
      modules.push_back(json{{"module", name}, {"dims", dims}, {"cochain_dims", sizes}});
    }
    doc["cohomology"] = std::move(modules);
    return finish(kOk);
  }

  // modular
  json branch;
  if (!lp.data.R) {
    branch = "no R-matrix: modular action not defined";
  } else if (!lp.factorizable || !lp.factorizable->factorizable) {
    branch = "not factorizable: modular action not defined";
  } else if (!lp.ribbon) {
    branch = "factorizable but not ribbon: frak T not defined";
  } else {
    branch = "factorizable ribbon: modular action computed";
  }
  doc["branch"] = branch;
  if (!lp.ribbon) {
    Report pre{"factorizable ribbon input", {}, 0, 0, {}};
    pre.fail("factorizable ribbon input", {}, lp.ribbon_error);
    ledger.add(pre);
    return finish(kVerification);
  }
  const auto& rd = *lp.ribbon;
  doc["scalars"] = json{{"rho(v)", F.format(rd.rho_v)},
                        {"rho(v^-1)", F.format(rd.rho_vinv)},
                        {"omega", F.format(rd.omega)},
                        {"omega^2", F.format(F.mul(rd.omega, rd.omega))}};
  auto cr = timer.phase("center relations", [&] { return check_center_relations(H, rd); });
  ledger.add(cr.report);

  const std::size_t N = opt.degree;
  ModularCochains<K> mc(H, rd, N + 1);
  timer.phase("cochain families", [&] {
    ledger.add(verify_inverses(mc.omega_ad()));
    ledger.add(verify_cochain_map(mc.omega_ad(), mc.cache()));
    ledger.add(verify_cochain_map(mc.frak_S(), mc.cache()));
    ledger.add(verify_inverses(mc.frak_T()));
    ledger.add(verify_cochain_map(mc.frak_T(), mc.cache()));
    return 0;
  });
  doc["paths"] = json{{"frak_S", mc.frak_S().path}, {"frak_T", mc.frak_T().path}};
  ledger.add(timer.phase("STS on cochains", [&] { return verify_sts_cochain(mc, N); }));
  auto witness = timer.phase("S^4 witness", [&] { return s4_homotopy_witness(mc, N); });
  ledger.add(witness.report);
  json witness_sizes = json::array();
  for (const auto& k : witness.K_maps) witness_sizes.push_back(json::array({k.rows(), k.cols()}));

  json degrees = json::array();
  std::optional<ModularRep<K>> top_rep;
  for (std::size_t n = 0; n <= N; ++n) {
    auto rep = timer.phase("rep HH^" + std::to_string(n), [&] { return modular_rep(mc, n); });
    ledger.add(rep.report);
    degrees.push_back(json{{"degree", n},
                           {"cochain_dim", mc.complex(mc.regular()).dim(long(n))},
                           {"dim", rep.dim()},
                           {"S", matrix_json(rep.S)},
                           {"T", matrix_json(rep.T)},
                           {"sts_scalar", F.format(rep.sigma_sts)},
                           {"s4_scalar", F.format(rep.sigma_s4)},
                           {"linear", rep.linear}});
    if (n == N) top_rep = std::move(rep);
  }
  doc["degrees"] = std::move(degrees);
  doc["witness_shapes"] = std::move(witness_sizes);

  if (!opt.act.empty()) {
    auto M = parse_act(opt.act);
    auto parts = opt.cls.empty() ? std::vector<std::string>{} : split_csv(opt.cls);
    std::vector<typename K::value_type> cls;
    for (const auto& p : parts) cls.push_back(F.parse(p));
    if (cls.size() != top_rep->dim())
      throw ParseError("class needs " + std::to_string(top_rep->dim()) + " coordinates in degree " +
                           std::to_string(N),
                       "--class");
    auto result = act(M, cls, *top_rep);
    json word = json::array();
    for (auto g : result.word) word.push_back(to_string(g));
    doc["action"] = json{{"matrix", M},
                         {"degree", N},
                         {"class", values_json(F, cls)},
                         {"word", word},
                         {"result", values_json(F, result.coordinates)},
                         {"note", result.note}};
  }
  return finish(ledger.ok ? kOk : kVerification);
}

int execute(const Options& opt, bool field_given) {
  json doc;
  doc["schema"] = kSchema;
  doc["command"] = opt.verb;
  json timing;
  int code = kOk;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (opt.preset.empty() == opt.input.empty()) throw ParseError("give exactly one of --preset and --input", "");
    doc["input"] = json{{"source", opt.input.empty() ? "preset:" + opt.preset : opt.input}};
    FieldSpec field = field_given ? FieldSpec::parse(opt.field) : FieldSpec::rationals();
    auto raw = load_raw(opt, field);
    if (!opt.input.empty() && !field_given) field = raw.field;
    doc["input"]["field"] = field.to_string();
    if (opt.verb != "verify") doc["input"]["degree"] = opt.degree;
    if (!field_given && field.kind == FieldKind::rationals && raw.dim > 8)
      doc["warnings"] = json::array({"dimension above 8 over the rationals; a prime field is faster"});
    code = with_field(field, [&](const auto& F) { return run(opt, raw, F, doc, timing); });
  } catch (const ResourceError& e) {
    doc["status"] = "resource error";
    doc["error"] = json{{"message", e.what()}, {"required", e.required()}, {"cap", default_memory_cap()}};
    code = kInput;
  } catch (const ParseError& e) {
    doc["status"] = "input error";
    doc["error"] = json{{"message", e.what()}, {"location", e.location()}};
    code = kInput;
  } catch (const InvalidField& e) {
    doc["status"] = "input error";
    doc["error"] = json{{"message", e.what()}};
    code = kInput;
  } catch (const DimensionMismatch& e) {
    doc["status"] = "input error";
    doc["error"] = json{{"message", e.what()}};
    code = kInput;
  } catch (const VerificationError& e) {
    doc["status"] = "verification failure";
    doc["error"] = json{{"message", e.what()}};
    code = kVerification;
  } catch (const InternalError& e) {
    doc["status"] = "verification failure";
    doc["error"] = json{{"message", e.what()}};
    code = kVerification;
  }
  doc["exit_code"] = code;
  if (!opt.no_timing) {
    timing["total"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    doc["timing_ms"] = std::move(timing);
  }
  std::string text = doc.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f || !(f << text)) {
      std::cerr << "hochmod: cannot write " << opt.out << "\n";
      return kInput;
    }
  }
  if (code != kOk) std::cerr << "hochmod: " << doc.value("status", std::string("failed")) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hochschild cohomology and the modular group action for factorizable ribbon Hopf algebras"};
  app.require_subcommand(1);
  Options opt;
  CLI::Option* field_opt = nullptr;
  auto common = [&](CLI::App* sub, bool degree) {
    auto* src = sub->add_option_group("source");
    src->add_option("--preset", opt.preset, "built-in preset")->check(CLI::IsMember(preset_names()));
    src->add_option("--input", opt.input, "presentation file");
    src->require_option(1);
    auto* f = sub->add_option("--field", opt.field, "Q, F<p> or cyclotomic-<n> (default Q, or the file's field)");
    if (!field_opt) field_opt = f;
    sub->add_flag("--no-timing", opt.no_timing, "omit the timing block");
    sub->add_option("--out", opt.out, "write the report here instead of stdout");
    if (degree) sub->add_option("--degree", opt.degree, "top degree N")->check(CLI::NonNegativeNumber);
    sub->callback([&opt, sub] { opt.verb = sub->get_name(); });
  };
  auto* verify = app.add_subcommand("verify", "run the structural verifiers");
  common(verify, false);
  auto* hh = app.add_subcommand("hh", "dimensions of HH^n for n = 0..N");
  common(hh, true);
  hh->add_option("--module", opt.modules, "also compute with this bimodule")
      ->check(CLI::IsMember({"regular", "s2inv-dual", "eps-ad", "eps-cad"}));
  auto* modular = app.add_subcommand("modular", "projective SL(2,Z) action on HH^n for n = 0..N");
  common(modular, true);
  modular->add_option("--act", opt.act, "a,b,c,d: act by this SL(2,Z) matrix on --class in degree N");
  modular->add_option("--class", opt.cls, "coordinates of a class in the HH^N representative basis");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }
  bool field_given = false;
  for (auto* sub : {verify, hh, modular})
    if (sub->parsed() && sub->get_option("--field")->count() > 0) field_given = true;
  return execute(opt, field_given);
}
