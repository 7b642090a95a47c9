#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fdq/classical.hpp"
#include "fdq/enveloping.hpp"
#include "fdq/errors.hpp"
#include "fdq/evolve.hpp"
#include "fdq/expr.hpp"
#include "fdq/lattice.hpp"
#include "fdq/star.hpp"
#include "fdq/symbol_json.hpp"
#include "fdq/wick.hpp"

namespace {

using nlohmann::ordered_json;
using namespace fdq;

// shortest round-trip decimal form, stable across runs
std::string jstr(double x) { return ordered_json(x).dump(); }

void emit_line(const std::string& s) { std::cout << s << "\n"; }

star::DiffContext context_for(unsigned modes, const std::string& lambda) {
  return star::DiffContext::named(modes, lambda);
}

core::Symbol parse_symbol(const std::string& text, unsigned modes) {
  return cli::eval_symbol(cli::parse(text), modes);
}

env::DiffWord parse_word(const std::string& text, unsigned modes) {
  return cli::eval_word(cli::parse(text), modes);
}

Rational parse_positive_rational(const std::string& text, const char* what) {
  cli::Expr e = cli::parse(text);
  if (e.kind != cli::Expr::Kind::Rat)
    throw ValidationError(std::string(what) + " must be a rational literal");
  if (sign_of(e.value) <= 0) throw ValidationError(std::string(what) + " must be positive");
  return e.value;
}

void print_symbol_result(const core::Symbol& s, bool json) {
  emit_line(json ? cli::symbol_to_json(s).dump() : cli::print_canonical(s));
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

void write_json_file(const std::string& path, const ordered_json& payload) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << payload.dump() << "\n";
  if (!out) throw ValidationError("failed while writing: " + path);
}

// evolve/smatrix: write the payload, print the meta block (or a summary)
void finish_numeric(const std::string& out_path, ordered_json payload, const ordered_json& meta,
                    bool json) {
  payload["meta"] = meta;
  write_json_file(out_path, payload);
  if (json) {
    emit_line(ordered_json{{"out", out_path}, {"meta", meta}}.dump());
  } else {
    for (const auto& [key, value] : meta.items())
      emit_line(key + " " + (value.is_string() ? value.get<std::string>() : value.dump()));
    emit_line("wrote " + out_path);
  }
}

struct FlowInput {
  unsigned modes = 1;
  num::PhasePoint x0;
  double dt = 1e-3;
  double hbar = 1.0;
};

FlowInput flow_input_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ValidationError("flow config must be a JSON object");
  FlowInput in;
  if (!j.contains("modes") || !j["modes"].is_number_integer() || j["modes"].get<long long>() < 1)
    throw ValidationError("flow config needs a positive integer \"modes\"");
  in.modes = j["modes"].get<unsigned>();
  auto read_vec = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != in.modes)
      throw ValidationError(std::string("flow config \"") + key +
                            "\" must be an array of length modes");
    std::vector<double> v;
    for (const auto& x : j[key]) {
      if (!x.is_number()) throw ValidationError(std::string("flow config \"") + key +
                                                "\" must contain numbers");
      v.push_back(x.get<double>());
    }
    return v;
  };
  in.x0.phi = read_vec("phi0");
  in.x0.pi = read_vec("pi0");
  if (j.contains("dt")) in.dt = j["dt"].get<double>();
  if (j.contains("h")) in.hbar = j["h"].get<double>();
  return in;
}

struct Args {
  std::string a, b, kind, lambda = "-ih", direction, strategy = "leftmost";
  unsigned modes = 1, seed = 0;
  std::vector<std::string> omega;
  bool json = false;
  std::string config, out, hamiltonian;
  int order = -1;
  double t = 0.0;
  CLI::App *c_bracket, *c_star, *c_renorm, *c_nf, *c_inv, *c_wick;
  CLI::App *c_evolve, *c_smatrix, *c_flow;
};

void setup(CLI::App& app, Args& g) {
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", g.json, "emit canonical JSON"); };
  auto add_modes = [&](CLI::App* sub) {
    sub->add_option("--modes", g.modes, "ambient mode count")->required();
  };
  auto add_lambda = [&](CLI::App* sub) {
    sub->add_option("--lambda", g.lambda, "deformation parameter: -ih, ih, or h")
        ->check(CLI::IsMember({"-ih", "ih", "h"}));
  };

  g.c_bracket = app.add_subcommand("bracket", "Poisson bracket of two symbols");
  g.c_bracket->add_option("A", g.a)->required();
  g.c_bracket->add_option("B", g.b)->required();
  add_modes(g.c_bracket);
  add_json(g.c_bracket);

  g.c_star = app.add_subcommand("star", "normal or Weyl star product");
  g.c_star->add_option("--kind", g.kind, "product kind")
      ->required()
      ->check(CLI::IsMember({"normal", "weyl"}));
  g.c_star->add_option("A", g.a)->required();
  g.c_star->add_option("B", g.b)->required();
  add_lambda(g.c_star);
  add_modes(g.c_star);
  add_json(g.c_star);

  g.c_renorm = app.add_subcommand("renorm", "ordering-transition map");
  g.c_renorm->add_option("A", g.a)->required();
  g.c_renorm->add_option("--direction", g.direction)
      ->required()
      ->check(CLI::IsMember({"weyl-to-normal", "normal-to-weyl"}));
  add_lambda(g.c_renorm);
  add_modes(g.c_renorm);
  add_json(g.c_renorm);

  g.c_nf = app.add_subcommand("nf", "normal form of an enveloping word");
  g.c_nf->add_option("WORD", g.a)->required();
  add_lambda(g.c_nf);
  add_modes(g.c_nf);
  g.c_nf->add_option("--strategy", g.strategy)
      ->check(CLI::IsMember({"leftmost", "rightmost", "seeded"}));
  g.c_nf->add_option("--seed", g.seed);
  add_json(g.c_nf);

  g.c_inv = app.add_subcommand("involution", "star involution of an enveloping word");
  g.c_inv->add_option("WORD", g.a)->required();
  add_lambda(g.c_inv);
  add_modes(g.c_inv);
  add_json(g.c_inv);

  g.c_wick = app.add_subcommand("wick", "Wick-variable transform of a symbol");
  g.c_wick->add_option("A", g.a)->required();
  add_modes(g.c_wick);
  g.c_wick->add_option("--omega", g.omega, "per-mode frequencies (positive rationals)")
      ->required()
      ->expected(-1);
  add_json(g.c_wick);

  g.c_evolve = app.add_subcommand("evolve", "Schrodinger evolution operator");
  g.c_evolve->add_option("--config", g.config)->required();
  g.c_evolve->add_option("--order", g.order,
                         "emit Dyson terms 0..P instead of the direct operator");
  g.c_evolve->add_option("--out", g.out)->required();
  add_json(g.c_evolve);

  g.c_smatrix = app.add_subcommand("smatrix", "truncated S-series");
  g.c_smatrix->add_option("--config", g.config)->required();
  g.c_smatrix->add_option("--order", g.order)->required();
  g.c_smatrix->add_option("--out", g.out)->required();
  add_json(g.c_smatrix);

  g.c_flow = app.add_subcommand("flow", "classical Hamiltonian flow");
  g.c_flow->add_option("--config", g.config, "phase-point JSON: modes, phi0, pi0, dt, h")
      ->required();
  g.c_flow->add_option("--hamiltonian", g.hamiltonian)->required();
  g.c_flow->add_option("--t", g.t, "total evolution time")->required();
  add_json(g.c_flow);

  app.require_subcommand(1);
}

int dispatch(const Args& g) {
  const std::string &arg_a = g.a, &arg_b = g.b, &arg_kind = g.kind, &arg_lambda = g.lambda;
  const std::string &arg_direction = g.direction, &arg_strategy = g.strategy;
  const std::string &arg_config = g.config, &arg_out = g.out, &arg_hamiltonian = g.hamiltonian;
  unsigned arg_modes = g.modes, arg_seed = g.seed;
  const std::vector<std::string>& arg_omega = g.omega;
  bool want_json = g.json;
  int arg_order = g.order;
  double arg_t = g.t;

  if (g.c_bracket->parsed()) {
    core::Symbol a = parse_symbol(arg_a, arg_modes), b = parse_symbol(arg_b, arg_modes);
    print_symbol_result(core::poisson_bracket(a, b), want_json);
  } else if (g.c_star->parsed()) {
    star::DiffContext ctx = context_for(arg_modes, arg_lambda);
    core::Symbol a = parse_symbol(arg_a, arg_modes), b = parse_symbol(arg_b, arg_modes);
    core::Symbol r = arg_kind == "normal" ? star::normal_star(a, b, ctx)
                                          : star::weyl_star(a, b, ctx);
    print_symbol_result(r, want_json);
  } else if (g.c_renorm->parsed()) {
    star::DiffContext ctx = context_for(arg_modes, arg_lambda);
    star::Direction dir = arg_direction == "weyl-to-normal" ? star::Direction::WeylToNormal
                                                            : star::Direction::NormalToWeyl;
    print_symbol_result(star::ordering_transform(parse_symbol(arg_a, arg_modes), ctx, dir),
                        want_json);
  } else if (g.c_nf->parsed()) {
    star::DiffContext ctx = context_for(arg_modes, arg_lambda);
    env::Strategy st = arg_strategy == "rightmost"  ? env::Strategy::Rightmost
                       : arg_strategy == "seeded"   ? env::Strategy::Seeded
                                                    : env::Strategy::Leftmost;
    print_symbol_result(env::normal_form(parse_word(arg_a, arg_modes), ctx, st, arg_seed),
                        want_json);
  } else if (g.c_inv->parsed()) {
    star::DiffContext ctx = context_for(arg_modes, arg_lambda);
    env::DiffWord w = env::involution(parse_word(arg_a, arg_modes), ctx);
    emit_line(want_json ? cli::word_to_json(w).dump() : cli::print_canonical(w));
  } else if (g.c_wick->parsed()) {
    if (arg_omega.size() != arg_modes)
      throw ValidationError("wick needs exactly one --omega value per mode");
    std::vector<Rational> omega;
    for (const std::string& s : arg_omega) omega.push_back(parse_positive_rational(s, "omega"));
    star::WickSymbol w = star::wick_transform(parse_symbol(arg_a, arg_modes), omega);
    emit_line(want_json ? cli::wick_to_json(w).dump() : cli::print_canonical(w));
  } else if (g.c_evolve->parsed()) {
    num::Lattice lat(num::config_from_file(arg_config));
    if (arg_order >= 0) {
      std::vector<num::CMatrix> terms = num::dyson(lat, unsigned(arg_order));
      num::CMatrix total(lat.dim());
      ordered_json jterms = ordered_json::array();
      for (const num::CMatrix& t : terms) {
        total += t;
        jterms.push_back(num::matrix_to_json(t));
      }
      ordered_json payload{{"op", "dyson"},
                           {"order", arg_order},
                           {"config", num::config_to_json(lat.config())},
                           {"terms", std::move(jterms)},
                           {"sum", num::matrix_to_json(total)}};
      finish_numeric(arg_out, std::move(payload), num::meta_json(lat, total), want_json);
    } else {
      num::CMatrix u = num::evolve_operator(lat);
      ordered_json payload{{"op", "evolve"},
                           {"config", num::config_to_json(lat.config())},
                           {"U", num::matrix_to_json(u)}};
      finish_numeric(arg_out, std::move(payload), num::meta_json(lat, u), want_json);
    }
  } else if (g.c_smatrix->parsed()) {
    num::Lattice lat(num::config_from_file(arg_config));
    num::CMatrix s = num::s_matrix(lat, unsigned(arg_order < 0 ? 0 : arg_order));
    ordered_json payload{{"op", "smatrix"},
                         {"order", arg_order},
                         {"config", num::config_to_json(lat.config())},
                         {"S", num::matrix_to_json(s)}};
    finish_numeric(arg_out, std::move(payload), num::meta_json(lat, s), want_json);
  } else if (g.c_flow->parsed()) {
    FlowInput in = flow_input_from_json(load_json_file(arg_config));
    core::Symbol h = cli::eval_symbol(cli::parse(arg_hamiltonian), in.modes);
    num::FlowResult r = num::classical_flow(h, in.x0, arg_t, in.dt, in.hbar);
    if (want_json) {
      ordered_json jphi = ordered_json::array(), jpi = ordered_json::array();
      for (const num::PhasePoint& p : r.points) {
        jphi.push_back(p.phi);
        jpi.push_back(p.pi);
      }
      emit_line(ordered_json{{"times", r.times},
                             {"phi", std::move(jphi)},
                             {"pi", std::move(jpi)},
                             {"energy_initial", r.energy_initial},
                             {"energy_final", r.energy_final},
                             {"separable", r.separable}}
                    .dump());
    } else {
      const num::PhasePoint& end = r.points.back();
      std::string phis, pis;
      for (double v : end.phi) phis += " " + jstr(v);
      for (double v : end.pi) pis += " " + jstr(v);
      emit_line("separable " + std::string(r.separable ? "true" : "false"));
      emit_line("energy_initial " + jstr(r.energy_initial));
      emit_line("energy_final " + jstr(r.energy_final));
      emit_line("phi" + phis);
      emit_line("pi" + pis);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdq: exact symbol algebra, deformation quantization, and lattice dynamics"};
  Args args;
  setup(app, args);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the usage diagnostic
    return code == 0 ? 0 : 2;
  }
  try {
    return dispatch(args);
  } catch (const ParseError& e) {
    std::cerr << "fdq: parse error at position " << e.position() << ": " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "fdq: validation error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "fdq: numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "fdq: internal error: " << e.what() << "\n";
    return 1;
  }
}
