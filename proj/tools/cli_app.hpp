#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graphpoly.hpp"

#ifndef GRAPHPOLY_VERSION
#define GRAPHPOLY_VERSION "0.0.0"
#endif

namespace gp::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kRefused = 2, kBudget = 3 };

struct RunConfig {
  std::string command;
  std::string graph;
  std::string poly = "independence";
  std::string lambda = "0.1,0";
  std::string q = "40,0";
  double eps = 0.01;
  std::size_t m = 6;
  double a = 1.588;
  std::uint64_t seed = 1;
  std::string format = "json";
  bool unsafe = false;
  std::optional<double> radius;
  std::size_t threads = 1;
  std::string family = "trees";
  std::size_t delta = 3;
  std::size_t max_n = 12;
  std::size_t points = 40;
  std::string cache;
};

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j{{"command", c.command}, {"graph", c.graph},   {"poly", c.poly},       {"lambda", c.lambda},
                   {"q", c.q},             {"eps", c.eps},       {"m", c.m},             {"a", c.a},
                   {"seed", c.seed},       {"format", c.format}, {"unsafe", c.unsafe},   {"threads", c.threads},
                   {"family", c.family},   {"delta", c.delta},   {"max_n", c.max_n},     {"points", c.points},
                   {"cache", c.cache}};
  j["radius"] = c.radius ? nlohmann::json(*c.radius) : nlohmann::json(nullptr);
  return j;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

class App {
 public:
  App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Certified evaluation of graph polynomials", "graphpoly"};
    app.require_subcommand(1);
    app.set_version_flag("--version", GRAPHPOLY_VERSION);
    struct Spec {
      const char* name;
      const char* help;
      std::vector<std::string> options;
    };
    const std::vector<Spec> specs{
        {"eval", "Certified approximation of Z_G(lambda) or chi_G(q)",
         {"graph", "poly", "lambda", "q", "eps", "unsafe", "radius", "threads", "cache"}},
        {"coeffs", "alpha_0..alpha_m from the coefficient engine, checked against the oracle",
         {"graph", "m", "threads", "cache"}},
        {"zeros", "Root survey over a graph family (CSV)", {"family", "poly", "delta", "max-n", "seed"}},
        {"certify", "Ratio-recursion zero-freeness certificate", {"graph", "lambda"}},
        {"polymer", "Polymer identity and cluster-expansion condition checks", {"graph", "q", "a"}},
        {"compare", "Approximation against the oracle over a lambda grid (CSV)",
         {"graph", "family", "delta", "max-n", "seed", "eps", "points", "threads", "cache"}},
    };
    for (const auto& spec : specs) {
      auto* sub = app.add_subcommand(spec.name, spec.help);
      sub->add_option("--format", cfg_.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
      for (const auto& o : spec.options) add_option(*sub, o);
      sub->callback([this, name = std::string(spec.name)] { cfg_.command = name; });
    }

    std::vector<const char*> argv{"graphpoly"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kOk : kInternal;
    }

    try {
      return dispatch();
    } catch (const OutsideRegion& e) {
      err_ << "refused: " << e.what() << " (pass --unsafe to evaluate without a guarantee)\n";
      return kRefused;
    } catch (const BudgetExceeded& e) {
      err_ << "budget exceeded: " << e.what() << "\n";
      return kBudget;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kInternal;
    }
  }

 private:
  void add_option(CLI::App& sub, const std::string& name) {
    if (name == "graph") sub.add_option("--graph", cfg_.graph, "edge-list file, JSON file or gen:<kind>:<p1>[:<p2>][:seed<k>]");
    else if (name == "poly") sub.add_option("--poly", cfg_.poly, "independence or chromatic")->check(CLI::IsMember({"independence", "chromatic"}));
    else if (name == "lambda") sub.add_option("--lambda", cfg_.lambda, "activity as re,im");
    else if (name == "q") sub.add_option("--q", cfg_.q, "number of colours as re,im");
    else if (name == "eps") sub.add_option("--eps", cfg_.eps, "multiplicative error target");
    else if (name == "unsafe") sub.add_flag("--unsafe", cfg_.unsafe, "evaluate outside the certified disk without a guarantee");
    else if (name == "radius") sub.add_option("--radius", radius_text_, "override the zero-free radius");
    else if (name == "threads") sub.add_option("--threads", cfg_.threads, "worker cap");
    else if (name == "cache") sub.add_option("--cache", cfg_.cache, "expansion cache file (read if present, then written)");
    else if (name == "m") sub.add_option("--m", cfg_.m, "number of coefficients");
    else if (name == "family") sub.add_option("--family", cfg_.family, "trees, binary_trees, regular or corpus");
    else if (name == "delta") sub.add_option("--delta", cfg_.delta, "maximum degree of the family");
    else if (name == "max-n") sub.add_option("--max-n", cfg_.max_n, "largest graph size in the family");
    else if (name == "seed") sub.add_option("--seed", cfg_.seed, "random seed");
    else if (name == "a") sub.add_option("--a", cfg_.a, "cluster-expansion parameter a > 1");
    else if (name == "points") sub.add_option("--points", cfg_.points, "lambda grid size");
  }

  int dispatch() {
    if (!radius_text_.empty()) cfg_.radius = parse_real(radius_text_);
    if (!(cfg_.eps > 0)) throw InvalidArgument("--eps must be > 0");
    if (cfg_.command == "eval") return cmd_eval();
    if (cfg_.command == "coeffs") return cmd_coeffs();
    if (cfg_.command == "zeros") return cmd_zeros();
    if (cfg_.command == "certify") return cmd_certify();
    if (cfg_.command == "polymer") return cmd_polymer();
    if (cfg_.command == "compare") return cmd_compare();
    throw InvalidArgument("unknown command");
  }

  Graph graph() const {
    if (cfg_.graph.empty()) throw InvalidArgument("--graph is required");
    return load_graph(cfg_.graph);
  }

  void load_cache() {
    if (!cfg_.cache.empty() && std::filesystem::exists(cfg_.cache)) default_engine().load_cache(cfg_.cache);
  }
  void save_cache() {
    if (!cfg_.cache.empty()) default_engine().save_cache(cfg_.cache);
  }

  void emit(nlohmann::json result) {
    nlohmann::json doc{{"tool", "graphpoly"},
                       {"version", GRAPHPOLY_VERSION},
                       {"config", to_json(cfg_)},
                       {"result", std::move(result)},
                       {"timestamp", utc_timestamp()}};
    out_ << doc.dump(2) << "\n";
  }

  int cmd_eval() {
    const Graph g = graph();
    load_cache();
    ApproxCertificate cert;
    double abs_z = 0;
    if (cfg_.poly == "independence") {
      ApproxOptions opt;
      opt.radius_override = cfg_.radius;
      opt.unsafe = cfg_.unsafe;
      opt.threads = cfg_.threads;
      const Complex lambda = parse_complex(cfg_.lambda);
      abs_z = std::abs(lambda);
      cert = approx_independence(g, lambda, cfg_.eps, opt);
    } else {
      ChromaticOptions opt;
      opt.radius_override = cfg_.radius;
      opt.unsafe = cfg_.unsafe;
      const Complex q = parse_complex(cfg_.q);
      abs_z = std::abs(1.0 / q);
      cert = chromatic_interpolate(g, q, cfg_.eps, opt);
    }
    save_cache();
    if (cfg_.format == "text") {
      out_ << "value " << fmt(cert.value.real()) << (cert.value.imag() < 0 ? " - " : " + ")
           << fmt(std::abs(cert.value.imag())) << "i\n"
           << "epsilon_guaranteed " << (cert.epsilon_guaranteed ? fmt(*cert.epsilon_guaranteed) : "none") << "\n"
           << "m_used " << cert.m_used << "\nradius " << fmt(cert.radius_assumed) << " ("
           << to_string(cert.radius_source) << ")\n";
      return kOk;
    }
    if (cfg_.format == "csv") {
      out_ << "value_re,value_im,epsilon_guaranteed,m_used,delta,radius_assumed,radius_source\n"
           << fmt(cert.value.real()) << "," << fmt(cert.value.imag()) << ","
           << (cert.epsilon_guaranteed ? fmt(*cert.epsilon_guaranteed) : "none") << "," << cert.m_used << ","
           << fmt(cert.delta) << "," << fmt(cert.radius_assumed) << "," << to_string(cert.radius_source) << "\n";
      return kOk;
    }
    auto j = gp::to_json(cert);
    j["n"] = g.vertex_count();
    j["max_degree"] = max_degree(g);
    j["abs_z"] = abs_z;
    emit(j);
    return kOk;
  }

  int cmd_coeffs() {
    const Graph g = graph();
    load_cache();
    const auto alpha = compute_alpha(g, cfg_.m, default_engine(), cfg_.threads);
    save_cache();
    std::optional<IntPolynomial> oracle;
    if (g.vertex_count() <= kDefaultOracleCap) oracle = brute_force_independence_coeffs(g).prefix(cfg_.m);
    bool mismatch = false;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t t = 0; t <= cfg_.m; ++t) {
      nlohmann::json row{{"t", t}, {"engine", alpha.coefficient(t).str()}};
      if (oracle) {
        row["oracle"] = oracle->coefficient(t).str();
        row["match"] = oracle->coefficient(t) == alpha.coefficient(t);
        mismatch = mismatch || !row["match"].get<bool>();
      } else {
        row["oracle"] = nullptr;
      }
      rows.push_back(row);
    }
    nlohmann::json stats = nlohmann::json::array();
    for (const auto& s : default_engine().stats(cfg_.m, max_degree(g)))
      stats.push_back({{"t", s.t}, {"degree_cap", s.degree_cap}, {"terms", s.terms}, {"max_vertices", s.max_vertices}});
    if (cfg_.format == "csv" || cfg_.format == "text") {
      out_ << "t,engine,oracle,match\n";
      for (const auto& r : rows)
        out_ << r["t"].get<std::size_t>() << "," << r["engine"].get<std::string>() << ","
             << (r["oracle"].is_null() ? "" : r["oracle"].get<std::string>()) << ","
             << (r.contains("match") ? (r["match"].get<bool>() ? "true" : "false") : "") << "\n";
    } else {
      emit({{"n", g.vertex_count()}, {"max_degree", max_degree(g)}, {"coefficients", rows},
            {"mismatch", mismatch}, {"expansion_terms", stats}});
    }
    if (mismatch) err_ << "error: engine and oracle coefficients differ\n";
    return mismatch ? kInternal : kOk;
  }

  int cmd_zeros() {
    const auto graphs = family(cfg_.family, cfg_.delta, cfg_.max_n, cfg_.seed);
    const bool csv = cfg_.format != "json";
    nlohmann::json rows = nlohmann::json::array();
    if (cfg_.poly == "independence") {
      if (csv) out_ << "graph,n,delta,min_modulus,min_neg_real_root\n";
      for (const auto& ng : graphs) {
        auto r = root_survey_row(ng.name, ng.graph);
        const std::string neg = r.min_neg_real_root ? fmt(*r.min_neg_real_root) : "";
        if (csv) out_ << r.graph << "," << r.n << "," << r.delta << "," << fmt(r.min_modulus) << "," << neg << "\n";
        else
          rows.push_back({{"graph", r.graph}, {"n", r.n}, {"delta", r.delta}, {"min_modulus", r.min_modulus},
                          {"min_neg_real_root", r.min_neg_real_root ? nlohmann::json(*r.min_neg_real_root) : nlohmann::json(nullptr)}});
      }
    } else {
      if (csv) out_ << "graph,n,delta,max_root_modulus,ratio_to_691delta\n";
      for (const auto& ng : graphs) {
        auto r = chromatic_survey_row(ng.name, ng.graph);
        if (csv) out_ << r.graph << "," << r.n << "," << r.delta << "," << fmt(r.max_root_modulus) << "," << fmt(r.ratio_to_691delta) << "\n";
        else
          rows.push_back({{"graph", r.graph}, {"n", r.n}, {"delta", r.delta}, {"max_root_modulus", r.max_root_modulus},
                          {"ratio_to_691delta", r.ratio_to_691delta}});
      }
    }
    if (!csv) emit({{"rows", rows}});
    return kOk;
  }

  int cmd_certify() {
    const Graph g = graph();
    const Complex lambda = parse_complex(cfg_.lambda);
    auto cert = certify_zero_free(g, lambda);
    auto j = gp::to_json(cert);
    const auto delta = max_degree(g);
    if (delta >= 2) j["shearer_radius"] = to_double(shearer_radius(delta));
    if (cfg_.format == "json") emit(j);
    else out_ << "ok " << (cert.ok ? "true" : "false") << "\nmax_ratio_modulus_nonroot " << fmt(cert.max_ratio_modulus_nonroot)
              << "\nvisited_states " << cert.visited_states << "\n";
    return kOk;
  }

  int cmd_polymer() {
    const Graph g = graph();
    const Complex q = parse_complex(cfg_.q);
    if (q == Complex(0, 0)) throw InvalidArgument("--q must be nonzero");
    const std::size_t n = g.vertex_count();
    const Complex lhs = std::pow(q, static_cast<double>(n)) * chromatic_poly(g).evaluate(Complex(1.0) / q);
    const Complex rhs = polymer_partition(g, q, n);
    const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
    nlohmann::json gk;
    for (auto mode : {GkMode::exact, GkMode::tree_bound}) {
      const std::string name = mode == GkMode::exact ? "exact" : "tree_bound";
      try {
        gk[name] = gp::to_json(gk_condition_check(g, q, cfg_.a, mode));
      } catch (const BudgetExceeded& e) {
        gk[name] = {{"skipped", std::string("budget exceeded [") + e.cap() + "]"}};
      }
    }
    const std::size_t delta = max_degree(g);
    const double q_bound = delta == 0 ? std::numeric_limits<double>::infinity()
                                      : std::log(2 - 1 / cfg_.a) / ((2 * cfg_.a - 1) * static_cast<double>(delta));
    nlohmann::json j{{"lemma1", {{"lhs", complex_json(lhs)}, {"rhs", complex_json(rhs)}, {"relative_error", rel}}},
                     {"gk", gk},
                     {"q_bound_for_a", std::isfinite(q_bound) ? nlohmann::json(q_bound) : nlohmann::json("inf")}};
    if (cfg_.format == "json") emit(j);
    else out_ << "lemma1_relative_error " << fmt(rel) << "\n";
    return kOk;
  }

  int cmd_compare() {
    std::vector<NamedGraph> graphs;
    if (!cfg_.graph.empty()) graphs.push_back({cfg_.graph, graph()});
    else graphs = family(cfg_.family, cfg_.delta, cfg_.max_n, cfg_.seed);
    load_cache();
    nlohmann::json rows = nlohmann::json::array();
    const bool csv = cfg_.format != "json";
    if (csv) out_ << "graph,n,delta,lambda_re,lambda_im,approx_re,approx_im,oracle_re,oracle_im,rel_error,m_used,within_2eps\n";
    bool all_ok = true;
    for (const auto& ng : graphs) {
      const double radius = shearer_radius_for(ng.graph);
      ApproxOptions opt;
      opt.threads = cfg_.threads;
      for (Complex lambda : disk_grid(0.9 * radius, cfg_.points)) {
        const auto cert = approx_independence(ng.graph, lambda, cfg_.eps, opt);
        const Complex oracle = exact_Z_eval(ng.graph, lambda);
        const double rel = std::abs(cert.value - oracle) / std::abs(oracle);
        const bool ok = rel <= 2 * cfg_.eps;
        all_ok = all_ok && ok;
        if (csv)
          out_ << ng.name << "," << ng.graph.vertex_count() << "," << max_degree(ng.graph) << "," << fmt(lambda.real()) << ","
               << fmt(lambda.imag()) << "," << fmt(cert.value.real()) << "," << fmt(cert.value.imag()) << ","
               << fmt(oracle.real()) << "," << fmt(oracle.imag()) << "," << fmt(rel) << "," << cert.m_used << ","
               << (ok ? "true" : "false") << "\n";
        else
          rows.push_back({{"graph", ng.name}, {"lambda", complex_json(lambda)}, {"approx", complex_json(cert.value)},
                          {"oracle", complex_json(oracle)}, {"rel_error", rel}, {"m_used", cert.m_used}, {"within_2eps", ok}});
      }
    }
    save_cache();
    if (!csv) emit({{"rows", rows}, {"all_within_2eps", all_ok}});
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  RunConfig cfg_;
  std::string radius_text_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return App(out, err).run(args);
}

}  // namespace gp::cli
