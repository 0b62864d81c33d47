// dint: integration ideals and inhomogeneous parts from the command line.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dint/dint.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitCancelled = 130;

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel.store(true); }

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Session {
  std::vector<std::string> vars, int_vars, params, gens, limits, decay, point, parts;
  std::vector<long> weight;
  std::string integrand, g, generator;
  std::string tie_break = "grevlex", format = "text", order = "graded";
  bool inhomo = false, holonomy_check = false, restriction = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

// Accepts a JSON array of strings or one comma-separated string.
std::vector<std::string> string_list(const json& v, const char* key) {
  if (v.is_string()) return split(v.get<std::string>(), ',');
  if (!v.is_array()) throw ValidationError(std::string("session key '") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw ValidationError(std::string("session key '") + key + "' must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

void load_session(const std::string& path, Session& s) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open session file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("session file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ValidationError("session file must contain a JSON object");
  static const std::set<std::string> known{"vars",   "int",     "params",    "weight",    "gens",   "integrand",
                                           "limits", "decay",   "point",     "tie_break", "format", "inhomo",
                                           "g",      "generator", "parts",   "holonomy_check", "order",
                                           "restriction", "command"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ValidationError("unknown session key '" + k + "'");
  if (j.contains("vars")) s.vars = string_list(j["vars"], "vars");
  if (j.contains("int")) s.int_vars = string_list(j["int"], "int");
  if (j.contains("params")) s.params = string_list(j["params"], "params");
  if (j.contains("gens")) s.gens = string_list(j["gens"], "gens");
  if (j.contains("limits")) s.limits = string_list(j["limits"], "limits");
  if (j.contains("decay")) s.decay = string_list(j["decay"], "decay");
  if (j.contains("point")) s.point = string_list(j["point"], "point");
  if (j.contains("parts")) s.parts = string_list(j["parts"], "parts");
  if (j.contains("weight")) s.weight = j["weight"].get<std::vector<long>>();
  if (j.contains("integrand")) s.integrand = j["integrand"].get<std::string>();
  if (j.contains("g")) s.g = j["g"].get<std::string>();
  if (j.contains("generator")) s.generator = j["generator"].get<std::string>();
  if (j.contains("tie_break")) s.tie_break = j["tie_break"].get<std::string>();
  if (j.contains("format")) s.format = j["format"].get<std::string>();
  if (j.contains("order")) s.order = j["order"].get<std::string>();
  if (j.contains("inhomo")) s.inhomo = j["inhomo"].get<bool>();
  if (j.contains("holonomy_check")) s.holonomy_check = j["holonomy_check"].get<bool>();
  if (j.contains("restriction")) s.restriction = j["restriction"].get<bool>();
}

// "t=0" -> ("t", "0")
std::pair<std::string, std::string> assignment(const std::string& s, const char* what) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError(std::string("expected var=value in ") + what + ": '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

std::size_t var_index(const dint::SignaturePtr& sig, const std::string& v) {
  for (std::size_t i = 0; i < sig->n(); ++i)
    if (sig->vars[i] == v) return i;
  throw ValidationError("unknown variable '" + v + "'");
}

void timing(std::string_view stage, double seconds) {
  std::cerr << "-- " << stage << " :" << std::fixed << std::setprecision(4) << seconds << "sec\n";
  std::cerr.unsetf(std::ios::floatfield);
}

// Moves the integration variables to the front of the variable list.
void order_variables(Session& s) {
  if (s.int_vars.empty()) return;
  for (const auto& v : s.int_vars)
    if (std::find(s.vars.begin(), s.vars.end(), v) == s.vars.end())
      throw ValidationError("integration variable '" + v + "' is not among --vars");
  std::vector<std::string> reordered = s.int_vars;
  for (const auto& v : s.vars)
    if (std::find(s.int_vars.begin(), s.int_vars.end(), v) == s.int_vars.end()) reordered.push_back(v);
  if (reordered != s.vars) {
    std::cerr << "note: variables reordered to";
    for (const auto& v : reordered) std::cerr << " " << v;
    std::cerr << " (integration variables first)\n";
  }
  s.vars = std::move(reordered);
}

// Identifiers of an expression in order of first appearance.
void collect_idents(const dint::ast::Node& n, std::vector<std::string>& out) {
  if (n.kind == dint::ast::Kind::ident && std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
  if (n.lhs) collect_idents(*n.lhs, out);
  if (n.rhs) collect_idents(*n.rhs, out);
}

template <dint::Field K>
class Runner {
 public:
  Runner(Session s, std::string cmd) : s_(std::move(s)), cmd_(std::move(cmd)) {
    tb_ = dint::parse_tie_break(s_.tie_break);
    if (s_.format != "text" && s_.format != "json" && s_.format != "asir")
      throw ValidationError("unknown format '" + s_.format + "' (expected text, json or asir)");
  }

  int run() {
    if (cmd_ == "ann-exp") return ann_exp();
    setup();
    if (s_.holonomy_check) {
      const auto rep = dint::is_holonomic(gens_, tb_, &g_cancel);
      if (!rep.holonomic) {
        std::cerr << "error: input ideal is not holonomic (dimension " << rep.dimension << ", expected " << sig_->n()
                  << (rep.unit_ideal ? "; unit ideal" : "") << ")\n";
        return kExitComputation;
      }
    }
    if (cmd_ == "integrate") return integrate();
    if (cmd_ == "restrict") return restrict();
    if (cmd_ == "bfct") return bfct();
    if (cmd_ == "gb") return gb();
    if (cmd_ == "verify") return verify();
    if (cmd_ == "boundary") return boundary();
    throw ValidationError("unknown command '" + cmd_ + "'");
  }

 private:
  Session s_;
  std::string cmd_;
  dint::TieBreak tb_ = dint::TieBreak::grevlex;
  dint::SignaturePtr sig_;
  std::vector<dint::WeylElement<K>> gens_;
  std::vector<long> w_;

  void setup() {
    if (s_.vars.empty()) throw ValidationError("--vars is required");
    order_variables(s_);
    sig_ = dint::make_signature(s_.vars, s_.int_vars.size(), s_.params);
    w_ = s_.weight.empty() ? std::vector<long>(sig_->m, 1) : s_.weight;
    if (w_.size() != sig_->m) throw ValidationError("--weight needs one entry per integration variable");
    for (long v : w_)
      if (v < 1) throw ValidationError("weights must be positive integers");
    if (s_.gens.empty()) throw ValidationError("--gens is required");
    for (const auto& g : s_.gens) {
      auto op = dint::parse_operator<K>(g, sig_);
      if (op.is_zero()) throw ValidationError("generator '" + g + "' is zero");
      gens_.push_back(std::move(op));
    }
  }

  dint::PipelineOptions options(bool inhomo) const {
    dint::PipelineOptions opt;
    opt.tie_break = tb_;
    opt.inhomo = inhomo;
    opt.cancel = &g_cancel;
    opt.on_stage = timing;
    return opt;
  }

  std::string str(const dint::WeylElement<K>& a) const { return dint::asir_string(a); }

  json bf_json(const dint::BFunction& bf) const {
    json factors = json::array();
    for (std::size_t k = 0; k < bf.factors.size(); ++k) factors.push_back({bf.factor_string(k), bf.factors[k].second});
    json s0 = bf.s0 ? json(bf.s0->get_si()) : json(nullptr);
    return {{"polynomial", bf.to_string()}, {"factors", factors}, {"s0", s0}, {"assumptions", bf.assumptions}};
  }

  void print_bf_text(const dint::BFunction& bf) const {
    std::cout << "generic b-function: " << bf.to_string() << "\n";
    std::cout << "factors:";
    for (std::size_t k = 0; k < bf.factors.size(); ++k)
      std::cout << " [" << bf.factor_string(k) << "," << bf.factors[k].second << "]";
    std::cout << "\ns0: " << (bf.s0 ? bf.s0->get_str() : "none") << "\n";
    for (const auto& a : bf.assumptions) std::cout << "assumption: " << a << "\n";
  }

  json result_json(const dint::IntegrationResult<K>& r) const {
    json out;
    out["schema_version"] = 1;
    out["bfunction"] = r.bf ? bf_json(*r.bf) : json(nullptr);
    out["basis_size"] = r.basis_size;
    out["zero_ideal"] = r.zero_ideal;
    json gens = json::array();
    for (const auto& g : r.generators) gens.push_back(str(g));
    out["generators"] = gens;
    if (r.has_inhomo) {
      json inh = json::array();
      for (const auto& row : r.inhomo) {
        json parts = json::array();
        for (const auto& [i, p] : row) parts.push_back({{"var", sig_->vars[i]}, {"op", str(p)}});
        inh.push_back(parts);
      }
      out["inhomo"] = inh;
    } else {
      out["inhomo"] = nullptr;
    }
    out["boundary"] = nullptr;
    return out;
  }

  void print_result(const dint::IntegrationResult<K>& r, const char* what, json boundary = nullptr) const {
    if (s_.format == "json") {
      json j = result_json(r);
      j["boundary"] = std::move(boundary);
      std::cout << j.dump(2) << "\n";
      return;
    }
    if (s_.format == "asir") {
      if (r.bf) {
        std::cout << "generic bfct : " << dint::asir_factor_list(*r.bf) << "\n";
        std::cout << "S0 : " << (r.bf->s0 ? r.bf->s0->get_str() : "none") << "\n";
        if (r.bf->s0) std::cout << "B_{S0} length : " << r.basis_size << "\n";
      }
      std::string gens;
      for (const auto& g : r.generators) gens += (gens.empty() ? "" : ",") + str(g);
      if (!r.has_inhomo) {
        std::cout << "[" << gens << "]\n";
        return;
      }
      std::string inh;
      for (const auto& row : r.inhomo) {
        std::string parts;
        for (const auto& [i, p] : row) parts += (parts.empty() ? "" : ",") + ("[" + sig_->derivative_name(i) + "," + str(p) + "]");
        inh += (inh.empty() ? "" : ",") + ("[[" + parts + "],1]");
      }
      std::cout << "[[" << gens << "],[" << inh << "]]\n";
      return;
    }
    if (r.bf) print_bf_text(*r.bf);
    if (r.zero_ideal) {
      std::cout << what << " ideal: 0 (no non-negative integer root)\n";
      return;
    }
    if (r.bf) std::cout << "basis size: " << r.basis_size << "\n";
    std::cout << what << " ideal generators:\n";
    for (std::size_t j = 0; j < r.generators.size(); ++j) {
      std::cout << "  [" << j + 1 << "] " << str(r.generators[j]) << "\n";
      if (r.has_inhomo)
        for (const auto& [i, p] : r.inhomo[j]) std::cout << "      part " << sig_->derivative_name(i) << ": " << str(p) << "\n";
    }
  }

  int integrate() {
    const auto r = dint::integration_ideal(gens_, w_, options(s_.inhomo));
    print_result(r, "integration");
    return 0;
  }

  int restrict() {
    std::vector<K> point(sig_->m, dint::coeff_traits<K>::zero());
    for (const auto& a : s_.point) {
      auto [v, val] = assignment(a, "--point");
      const auto i = var_index(sig_, v);
      if (i >= sig_->m) throw ValidationError("--point assigns '" + v + "', which is not restricted");
      point[i] = dint::parse_coefficient<K>(val, sig_->params);
    }
    const auto r = dint::restriction_ideal(gens_, w_, point, options(false));
    print_result(r, "restriction");
    return 0;
  }

  int bfct() {
    if (sig_->m == 0) throw ValidationError("bfct needs at least one variable in --int");
    std::vector<dint::WeylElement<K>> ideal;
    for (const auto& g : gens_)
      ideal.push_back(s_.restriction ? g : dint::fourier(g, dint::FourierDirection::forward));
    const auto opt = options(false);
    dint::detail::StageTimer timer(opt);
    const auto bf = dint::generic_bfunction(ideal, w_, tb_, &g_cancel);
    timer.done("generic_bfct");
    if (s_.format == "json") {
      json j = bf_json(bf);
      j["schema_version"] = 1;
      std::cout << j.dump(2) << "\n";
    } else if (s_.format == "asir") {
      std::cout << "generic bfct : " << dint::asir_factor_list(bf) << "\n";
      std::cout << "S0 : " << (bf.s0 ? bf.s0->get_str() : "none") << "\n";
    } else {
      print_bf_text(bf);
    }
    return 0;
  }

  int gb() {
    dint::TermOrder order = dint::TermOrder::graded(tb_);
    if (s_.order == "weight") {
      order = dint::TermOrder::weyl_weight(dint::detail::full_weight(w_, sig_->n()), tb_);
    } else if (s_.order != "graded") {
      throw ValidationError("unknown order '" + s_.order + "' (expected graded or weight)");
    }
    const auto opt = options(false);
    dint::detail::StageTimer timer(opt);
    const auto G = dint::buchberger(gens_, order, false, &g_cancel);
    timer.done("weyl_gr");
    if (s_.format == "json") {
      json b = json::array();
      for (const auto& g : G.basis) b.push_back(str(g));
      std::cout << json{{"schema_version", 1}, {"basis", b}}.dump(2) << "\n";
    } else if (s_.format == "asir") {
      std::string out;
      for (const auto& g : G.basis) out += (out.empty() ? "" : ",") + str(g);
      std::cout << "[" << out << "]\n";
    } else {
      for (const auto& g : G.basis) std::cout << str(g) << "\n";
    }
    return 0;
  }

  int verify() {
    bool ok = true;
    if (!s_.generator.empty()) {
      auto c = dint::parse_operator<K>(s_.generator, sig_);
      for (const auto& a : s_.parts) {
        auto [v, src] = assignment(a, "--part");
        const auto i = var_index(sig_, v);
        if (i >= sig_->m) throw ValidationError("--part names '" + v + "', which is not integrated");
        c -= dint::WeylElement<K>::d(sig_, i) * dint::parse_operator<K>(src, sig_);
      }
      ok = dint::is_member(c, gens_, dint::TermOrder::graded(tb_), &g_cancel);
    } else {
      const auto r = dint::integration_ideal(gens_, w_, options(true));
      ok = dint::verify_inhomo(r, gens_, tb_, &g_cancel);
    }
    if (s_.format == "json") std::cout << json{{"schema_version", 1}, {"verified", ok}}.dump(2) << "\n";
    else std::cout << (ok ? "true" : "false") << "\n";
    return ok ? 0 : kExitVerifyFailed;
  }

  dint::Endpoint<K> endpoint(const std::string& text) const {
    if (text == "inf" || text == "+inf") return dint::Endpoint<K>::infinity(true, false);
    if (text == "-inf") return dint::Endpoint<K>::infinity(false, false);
    try {
      return dint::Endpoint<K>::at(dint::parse_coefficient<K>(text, sig_->params));
    } catch (const dint::ParseError&) {
      return dint::Endpoint<K>::symbol(text);
    }
  }

  int boundary() {
    if (sig_->m == 0) throw ValidationError("boundary needs at least one variable in --int");
    std::vector<std::optional<dint::Limits<K>>> lim(sig_->m);
    for (const auto& a : s_.limits) {
      auto [v, range] = assignment(a, "--limits");
      const auto i = var_index(sig_, v);
      if (i >= sig_->m) throw ValidationError("--limits names '" + v + "', which is not integrated");
      const auto colon = range.find(':');
      if (colon == std::string::npos) throw ValidationError("expected var=lower:upper in --limits: '" + a + "'");
      lim[i] = dint::Limits<K>{endpoint(range.substr(0, colon)), endpoint(range.substr(colon + 1))};
    }
    std::vector<dint::Limits<K>> limits;
    for (std::size_t i = 0; i < sig_->m; ++i) {
      if (!lim[i]) throw ValidationError("missing --limits for '" + sig_->vars[i] + "'");
      limits.push_back(*lim[i]);
    }
    for (const auto& a : s_.decay) {
      auto [v, where] = assignment(a, "--decay");
      const auto i = var_index(sig_, v);
      if (i >= sig_->m) throw ValidationError("--decay names '" + v + "', which is not integrated");
      using Kind = typename dint::Endpoint<K>::Kind;
      bool matched = false;
      for (auto* e : {&limits[i].lower, &limits[i].upper}) {
        const bool hit = (where == "inf" || where == "+inf") ? e->kind == Kind::plus_infinity
                         : where == "-inf"                   ? e->kind == Kind::minus_infinity
                                                             : false;
        if (hit) {
          e->decays = true;
          matched = true;
        }
      }
      if (!matched) throw ValidationError("--decay '" + a + "' does not name an infinite limit");
    }
    std::optional<dint::HyperexpFunction<K>> f;
    if (!s_.integrand.empty() && s_.integrand != "SYMBOLIC") f = dint::parse_integrand<K>(s_.integrand, sig_);
    const auto r = dint::integration_ideal(gens_, w_, options(true));
    const auto rep = dint::boundary_report(r, f, limits);
    json b = json::array();
    for (std::size_t j = 0; j < rep.lines.size(); ++j) {
      const auto& line = rep.lines[j];
      json terms = json::array();
      std::vector<std::string> xs(sig_->vars);
      for (const auto& t : line.terms)
        terms.push_back({{"var", sig_->vars[t.var]},
                         {"expression", t.expression},
                         {"value", t.value ? json(t.value->to_string(xs, sig_->params)) : json(nullptr)}});
      b.push_back({{"generator", str(r.generators[j])},
                   {"terms", terms},
                   {"value", line.value ? json(line.value->to_string(xs, sig_->params)) : json(nullptr)},
                   {"text", line.text}});
    }
    if (s_.format == "json") {
      print_result(r, "integration", json{{"lines", b}});
      return 0;
    }
    print_result(r, "integration");
    std::cout << "boundary:\n";
    if (rep.zero_ideal) std::cout << "  the integration ideal is 0\n";
    for (const auto& line : rep.lines) std::cout << "  " << line.text << "\n";
    return 0;
  }

  int ann_exp() {
    if (s_.g.empty()) throw ValidationError("--g is required");
    const auto node = dint::parse_expression(s_.g);
    if (s_.vars.empty()) {
      std::vector<std::string> ids;
      collect_idents(*node, ids);
      for (const auto& id : ids)
        if (std::find(s_.params.begin(), s_.params.end(), id) == s_.params.end()) s_.vars.push_back(id);
      if (s_.vars.empty()) throw ValidationError("--g has no variables; pass --vars");
    }
    order_variables(s_);
    sig_ = dint::make_signature(s_.vars, s_.int_vars.size(), s_.params);
    const auto ann = dint::exp_annihilator(dint::to_polynomial<K>(*node, sig_), sig_);
    if (s_.format == "json") {
      json a = json::array();
      for (const auto& g : ann) a.push_back(str(g));
      std::cout << json{{"schema_version", 1}, {"vars", sig_->vars}, {"generators", a}}.dump(2) << "\n";
    } else if (s_.format == "asir") {
      std::string out;
      for (const auto& g : ann) out += (out.empty() ? "" : ",") + str(g);
      std::cout << "[" << out << "]\n";
    } else {
      for (const auto& g : ann) std::cout << str(g) << "\n";
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integration ideals of holonomic D-modules with inhomogeneous parts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dint 1.0.0");

  Session cli;
  std::string session_file;
  std::string vars, int_vars, params, weight;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--session", session_file, "JSON session file (flags override its values)");
    sub->add_option("--vars", vars, "comma-separated variables, e.g. t,x");
    sub->add_option("--int", int_vars, "variables to integrate (or restrict), moved to the front");
    sub->add_option("--params", params, "comma-separated parameters, e.g. a,b,c");
    sub->add_option("--weight", weight, "positive weights for the --int variables, e.g. 1");
    sub->add_option("--gens", cli.gens, "generators of the ideal")->delimiter(',');
    sub->add_option("--tie-break", cli.tie_break, "grevlex or lex")->check(CLI::IsMember({"grevlex", "lex"}));
    sub->add_option("--format", cli.format, "text, json or asir")->check(CLI::IsMember({"text", "json", "asir"}));
    sub->add_flag("--holonomy-check", cli.holonomy_check, "reject inputs that are not holonomic");
  };

  auto* integrate = app.add_subcommand("integrate", "integration ideal (with --inhomo: inhomogeneous parts)");
  add_common(integrate);
  integrate->add_flag("--inhomo", cli.inhomo, "compute inhomogeneous parts");

  auto* restrict = app.add_subcommand("restrict", "restriction ideal at a point");
  add_common(restrict);
  restrict->add_option("--point", cli.point, "restriction point, e.g. t=0 (default 0)")->delimiter(',');

  auto* bfct = app.add_subcommand("bfct", "generic b-function of the Fourier transformed ideal");
  add_common(bfct);
  bfct->add_flag("--restriction", cli.restriction, "use the ideal itself instead of its Fourier transform");

  auto* gb = app.add_subcommand("gb", "Groebner basis");
  add_common(gb);
  gb->add_option("--order", cli.order, "graded or weight")->check(CLI::IsMember({"graded", "weight"}));

  auto* ann = app.add_subcommand("ann-exp", "annihilator of exp(g)");
  ann->add_option("--g", cli.g, "polynomial exponent g")->required();
  ann->add_option("--vars", vars, "variables (default: order of appearance in g)");
  ann->add_option("--int", int_vars, "integration variables, moved to the front");
  ann->add_option("--params", params, "comma-separated parameters");
  ann->add_option("--format", cli.format, "text, json or asir")->check(CLI::IsMember({"text", "json", "asir"}));

  auto* verify = app.add_subcommand("verify", "check g - sum d_i p_i in I, or certify a fresh integration");
  add_common(verify);
  verify->add_option("--generator", cli.generator, "operator g of the integration ideal");
  verify->add_option("--part", cli.parts, "inhomogeneous part, e.g. t=-dt^2-3*dt-3");

  auto* boundary = app.add_subcommand("boundary", "inhomogeneous equations with boundary terms");
  add_common(boundary);
  boundary->add_option("--integrand", cli.integrand, "r*exp(g), or SYMBOLIC");
  boundary->add_option("--limits", cli.limits, "integration limits, e.g. t=0:inf")->delimiter(',');
  boundary->add_option("--decay", cli.decay, "endpoints where the integrand terms vanish, e.g. t=inf")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::signal(SIGINT, on_sigint);
  try {
    Session s;
    const bool has_session = sub->get_option_no_throw("--session") && !session_file.empty();
    if (has_session) load_session(session_file, s);
    auto given = [&](const char* name) {
      const auto* opt = sub->get_option_no_throw(name);
      return opt && opt->count() > 0;
    };
    if (given("--vars")) s.vars = split(vars, ',');
    if (given("--int")) s.int_vars = split(int_vars, ',');
    if (given("--params")) s.params = split(params, ',');
    if (given("--weight")) {
      s.weight.clear();
      for (const auto& v : split(weight, ',')) {
        try {
          s.weight.push_back(std::stol(v));
        } catch (const std::exception&) {
          throw ValidationError("invalid weight '" + v + "'");
        }
      }
    }
    if (given("--gens")) s.gens = cli.gens;
    if (given("--tie-break")) s.tie_break = cli.tie_break;
    if (given("--format")) s.format = cli.format;
    if (given("--holonomy-check")) s.holonomy_check = cli.holonomy_check;
    if (given("--inhomo")) s.inhomo = cli.inhomo;
    if (given("--point")) s.point = cli.point;
    if (given("--restriction")) s.restriction = cli.restriction;
    if (given("--order")) s.order = cli.order;
    if (given("--g")) s.g = cli.g;
    if (given("--generator")) s.generator = cli.generator;
    if (given("--part")) s.parts = cli.parts;
    if (given("--integrand")) s.integrand = cli.integrand;
    if (given("--limits")) s.limits = cli.limits;
    if (given("--decay")) s.decay = cli.decay;

    const std::string cmd = sub->get_name();
    if (s.params.empty()) return Runner<dint::Rational>(std::move(s), cmd).run();
    return Runner<dint::FieldElem>(std::move(s), cmd).run();
  } catch (const dint::Cancelled&) {
    std::cerr << "cancelled\n";
    return kExitCancelled;
  } catch (const dint::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    std::cerr << "error: session file: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return kExitComputation;
  }
}
