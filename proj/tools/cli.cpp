#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "charclass/csm.hpp"
#include "charclass/problem.hpp"

namespace charclass::cli {

namespace {

using nlohmann::json;

struct Request {
  std::string command;
  std::string file;
  std::string expr;
  bool json_out = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> field;
  std::string backend = "symbolic";
  int degree_bound = 0;
  bool affine = false;
  bool verify = false;
  unsigned threads = 0;
};

const char* const kMlAssumption =
    "ML degree equals the signed Euler characteristic of the model minus the coordinate and "
    "sum hyperplanes; this holds when that open set is smooth, which is not checked";

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::parse, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json empty_record(const std::string& command) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  for (const char* key : {"n", "dim", "field", "seed", "backend", "segre", "csm_degrees", "pushforward", "euler",
                          "ml_degree", "chi_X", "chi_cut"})
    r[key] = nullptr;
  r["warnings"] = json::array();
  r["timing_ms"] = 0;
  return r;
}

std::string homvar_for(const ProblemFile& pf) {
  if (pf.homogenizing_variable) return *pf.homogenizing_variable;
  std::string name = "x0";
  for (int i = 0; pf.ring->index_of(name) >= 0; ++i) name = "h" + std::to_string(i);
  return name;
}

template <class K>
void compute(const Request& rq, const ProblemFile& pf, const Field<K>& field, Rng& rng, json& rec) {
  auto ring = make_ring<K>(pf.variables(), field);
  std::vector<Polynomial<K>> gens;
  for (const auto& g : pf.generators) gens.push_back(to_field(g, ring));

  ComputeOptions opts;
  opts.backend = rq.backend == "numeric" ? Backend::numeric : Backend::symbolic;
  opts.degree_bound = rq.degree_bound;
  opts.verify = rq.verify;
  opts.tracker.threads = rq.threads;

  if (pf.affine) {
    auto a = affine_euler(gens, ring, opts, rng, homvar_for(pf));
    rec["n"] = ring->nvars();
    rec["dim"] = a.dim;
    rec["euler"] = a.euler;
    rec["chi_closure"] = a.chi_closure;
    rec["chi_infinity"] = a.chi_infinity;
    return;
  }

  Ideal<K> I(ring, gens);
  rec["n"] = ring->ambient_dim();
  if (rq.degree_bound > 0 && !I.is_zero_ideal() && rq.degree_bound < I.max_degree())
    throw std::invalid_argument("--degree-bound " + std::to_string(rq.degree_bound) +
                                " is below the largest generator degree " + std::to_string(I.max_degree()));

  if (rq.command == "segre") {
    if (I.is_unit() || I.stats().empty()) throw DomainError("segre: the ideal defines the empty scheme");
    auto res = residual_degrees(I, opts, rng);
    auto s = segre_from_residuals(res);
    if (opts.verify) {
      Rng fresh(rng());
      if (!(segre_from_residuals(residual_degrees(I, opts, fresh)) == s))
        throw GenericityError("verification failed: Segre degrees differ between independent random draws");
    }
    rec["dim"] = s.k;
    rec["segre"] = s.values;
    rec["residual_degrees"] = res.degrees;
    rec["element_degree"] = res.m;
  } else if (rq.command == "csm" || rq.command == "euler") {
    auto c = csm_subscheme(I, opts, rng);
    rec["dim"] = c.dim;
    rec["euler"] = c.euler;
    if (rq.command == "csm") {
      rec["csm_degrees"] = c.degrees;
      std::vector<std::int64_t> coeffs(c.pushforward.coeffs().begin(), c.pushforward.coeffs().end());
      rec["pushforward"] = coeffs;
      rec["pushforward_text"] = to_string(c.pushforward);
    }
  } else {
    auto ml = ml_degree(I, opts, rng);
    rec["dim"] = ml.dim;
    rec["ml_degree"] = ml.ml_degree;
    rec["chi_X"] = ml.chi_x;
    rec["chi_cut"] = ml.chi_cut;
    for (const auto& w : ml.warnings) rec["warnings"].push_back(w);
    rec["assumptions"] = kMlAssumption;
  }
}

std::string join(const json& a) {
  std::string s;
  for (const auto& v : a) s += (s.empty() ? "" : " ") + v.dump();
  return s;
}

void print_text(const json& r, std::ostream& out) {
  auto line = [&](const char* label, const json& v) {
    if (v.is_null()) return;
    out << label << ": " << (v.is_array() ? join(v) : v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  };
  line("command", r["command"]);
  line("ambient dimension", r["n"]);
  line("dimension", r["dim"]);
  line("field", r["field"].get<std::uint32_t>() == 0 ? json("QQ") : r["field"]);
  line("seed", r["seed"]);
  line("backend", r["backend"]);
  line("segre", r["segre"]);
  if (r.contains("residual_degrees")) line("residual degrees", r["residual_degrees"]);
  line("csm_degrees", r["csm_degrees"]);
  if (r.contains("pushforward_text")) line("pushforward", r["pushforward_text"]);
  line("euler", r["euler"]);
  if (r.contains("chi_closure")) {
    line("chi_closure", r["chi_closure"]);
    line("chi_infinity", r["chi_infinity"]);
  }
  line("ml_degree", r["ml_degree"]);
  line("chi_X", r["chi_X"]);
  line("chi_cut", r["chi_cut"]);
  for (const auto& w : r["warnings"]) out << "warning: " << w.get<std::string>() << '\n';
  if (r.contains("assumptions")) out << "note: " << r["assumptions"].get<std::string>() << '\n';
}

int fail(const Request& rq, int code, const std::string& category, const std::string& message, std::ostream& out,
         std::ostream& err) {
  err << "error (" << category << "): " << message << '\n';
  if (rq.json_out) {
    json r;
    r["schema_version"] = kSchemaVersion;
    r["command"] = rq.command;
    r["error"] = {{"category", category}, {"message", message}};
    out << r.dump() << '\n';
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Request rq;
  CLI::App app{"Segre classes, CSM classes, Euler characteristics and ML degrees of projective schemes",
               "charclass"};
  app.add_option("command", rq.command, "segre | csm | euler | mldeg")
      ->required()
      ->check(CLI::IsMember({"segre", "csm", "euler", "mldeg"}));
  auto* file_opt = app.add_option("file", rq.file, "problem file (.id)");
  auto* expr_opt = app.add_option("--expr", rq.expr, "problem text given inline");
  file_opt->excludes(expr_opt);
  app.add_flag("--json", rq.json_out, "print one JSON record");
  app.add_option("--seed", rq.seed, "random seed (default: from entropy)");
  app.add_option("--field", rq.field, "prime characteristic, or 0 for the rationals (default: random prime)");
  app.add_option("--backend", rq.backend, "residual degree backend")
      ->check(CLI::IsMember({"symbolic", "numeric"}));
  app.add_option("--degree-bound", rq.degree_bound, "degree of the random elements")->check(CLI::PositiveNumber);
  app.add_flag("--affine", rq.affine, "treat generators as affine and compute the affine Euler characteristic");
  app.add_flag("--verify", rq.verify, "repeat randomized steps with independent randomness");
  app.add_option("--threads", rq.threads, "worker threads (default: hardware concurrency)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(rq, static_cast<int>(ErrorCategory::parse), "usage", e.what(), out, err);
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (rq.file.empty() && rq.expr.empty()) throw CLI::RequiredError("a problem file or --expr");
    std::string text = rq.expr.empty() ? read_file(rq.file) : rq.expr;
    ProblemFile pf = parse_problem(text, rq.affine);
    if (pf.affine && rq.command != "euler")
      throw std::invalid_argument("affine input is only supported by the euler command");

    const std::uint64_t seed = rq.seed ? *rq.seed : (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
    std::uint32_t p;
    if (rq.field) {
      p = *rq.field;
    } else {
      Rng prime_rng(derive_seed(seed, "field"));
      p = random_prime(prime_rng);
    }

    json rec = empty_record(rq.command);
    rec["input_digest"] = digest(serialize(pf));
    rec["affine"] = pf.affine;
    rec["field"] = p;
    rec["seed"] = seed;
    rec["backend"] = rq.backend;
    Rng rng(seed);
    if (p == 0)
      compute(rq, pf, Field<Rational>{}, rng, rec);
    else
      compute(rq, pf, Field<Fp>(p), rng, rec);
    rec["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    if (rq.json_out)
      out << rec.dump() << '\n';
    else
      print_text(rec, out);
    return 0;
  } catch (const Error& e) {
    return fail(rq, static_cast<int>(e.category()), std::string(category_name(e.category())), e.what(), out, err);
  } catch (const CLI::Error& e) {
    return fail(rq, static_cast<int>(ErrorCategory::parse), "usage", e.what(), out, err);
  } catch (const std::invalid_argument& e) {
    return fail(rq, static_cast<int>(ErrorCategory::parse), "usage", e.what(), out, err);
  } catch (const std::bad_alloc&) {
    return fail(rq, static_cast<int>(ErrorCategory::resource), "resource", "out of memory", out, err);
  } catch (const std::exception& e) {
    return fail(rq, 1, "internal", e.what(), out, err);
  }
}

}  // namespace charclass::cli
