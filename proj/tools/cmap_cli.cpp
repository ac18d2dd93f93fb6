// cmap: Carlitz-rank toolkit for permutation polynomials over GF(q).
//
// Exit codes: 0 = all assertions hold, 2 = violation found, 3 = cap or time
// budget exceeded, 64 = usage error.  Identical flags produce identical
// bytes on stdout; wall-clock timings go to stderr only.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmap/analysis.hpp"
#include "cmap/carlitz.hpp"
#include "cmap/gf.hpp"
#include "cmap/permpoly.hpp"
#include "cmap/repro.hpp"

namespace {

using cmap::Elem;
using cmap::Field;
using json = nlohmann::ordered_json;

enum class Format { Json, Csv, Table };

struct Common {
  std::string field;
  std::string format = "json";
  bool csv = false;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0: all hardware threads
  std::uint64_t node_budget = cmap::RankSearcher::kDefaultNodeBudget;
  double time_budget = 0.0;  // seconds; 0 disables the check

  Format fmt() const {
    if (csv || format == "csv") return Format::Csv;
    if (format == "table") return Format::Table;
    return Format::Json;
  }
  int effective_jobs() const {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }
};

// Adds the options shared by every subcommand.  field_required is false only
// for repro-paper.
void add_common(CLI::App* sub, Common& c, bool field_required = true) {
  auto* f = sub->add_option("--field", c.field,
                            "Field spec: p, p^r, or a prime power q, each "
                            "optionally :c0,...,cr (modulus, ascending)");
  if (field_required) f->required();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  sub->add_flag("--csv", c.csv, "Shorthand for --format csv");
  sub->add_option("--seed", c.seed, "RNG seed for sampled runs")
      ->capture_default_str();
  sub->add_option("--jobs", c.jobs,
                  "Worker threads (0 = all cores); never changes results");
  sub->add_option("--node-budget", c.node_budget,
                  "Rank-search node cap before giving up");
  sub->add_option("--time-budget", c.time_budget,
                  "Fail with exit 3 if the run takes longer (seconds)");
}

json report_header(const std::string& command, const Field& f) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["field"] = f.spec_string();
  return j;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_csv(const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i)
    std::cout << (i ? "," : "") << header[i];
  std::cout << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      std::cout << (i ? "," : "") << row[i];
    std::cout << "\n";
  }
}

void emit_table(const json& j, int indent = 0) {
  for (const auto& [key, value] : j.items()) {
    std::cout << std::string(indent, ' ') << key << ": ";
    if (value.is_object()) {
      std::cout << "\n";
      emit_table(value, indent + 2);
    } else {
      std::cout << value.dump() << "\n";
    }
  }
}

void emit(const Common& c, const json& j,
          const std::vector<std::string>& csv_header,
          const std::vector<std::vector<std::string>>& csv_rows) {
  switch (c.fmt()) {
    case Format::Json: emit_json(j); break;
    case Format::Csv: emit_csv(csv_header, csv_rows); break;
    case Format::Table: emit_table(j); break;
  }
}

// ---- input plumbing ---------------------------------------------------------

struct TableInput {
  std::string poly, table, rep;

  void add_options(CLI::App* sub) {
    sub->add_option("--poly", poly,
                    "Polynomial, ascending coefficients c0,c1,... "
                    "(integer element indices)");
    sub->add_option("--table", table, "Value table as a JSON array of q ints");
    sub->add_option("--rep", rep,
                    "Rep \"n; a_0,...,a_{n+1}\" or normalized "
                    "\"n; c_0,...,c_{n-1}\"");
  }

  // Returns the table plus a JSON description of what was parsed.
  std::pair<cmap::ValueTable, json> resolve(const Field& f) const {
    int given = !poly.empty() + !table.empty() + !rep.empty();
    if (given != 1)
      throw CLI::ValidationError(
          "input", "exactly one of --poly, --table, --rep is required");
    json desc;
    if (!poly.empty()) {
      cmap::Poly p = cmap::parse_poly(f, poly);
      desc["poly"] = p.coeffs;
      return {cmap::to_table(f, p), desc};
    }
    if (!table.empty()) {
      json arr = json::parse(table, nullptr, /*allow_exceptions=*/false);
      if (arr.is_discarded() || !arr.is_array() || arr.size() != f.q())
        throw CLI::ValidationError("--table",
                                   "expected a JSON array of q integers");
      cmap::ValueTable t{f.q(), {}};
      for (const auto& v : arr) {
        if (!v.is_number_integer())
          throw CLI::ValidationError("--table", "entries must be integers");
        std::int64_t x = v.get<std::int64_t>();
        if (x < 0 || x >= static_cast<std::int64_t>(f.q()))
          throw CLI::ValidationError("--table", "entry out of range");
        t.v.push_back(static_cast<Elem>(x));
      }
      desc["table"] = t.v;
      return {t, desc};
    }
    cmap::AnyRep r = cmap::parse_rep(f, rep);
    desc["rep"] = rep;
    cmap::ValueTable t = std::visit(
        [&](const auto& rr) { return cmap::rep_table(f, rr); }, r);
    return {t, desc};
  }
};

std::string rank_string(const cmap::RankResult& r) {
  if (r.exceeded) return "EXCEEDS(" + std::to_string(r.rank) + ")";
  return std::to_string(r.rank);
}

json rank_json(const cmap::RankResult& r) {
  if (r.exceeded) return rank_string(r);
  return r.rank;
}

// ---- subcommands ------------------------------------------------------------

int cmd_analyze(const Common& c, const TableInput& in, int max_n,
                bool no_crk) {
  Field f = Field::parse(c.field);
  auto [t, desc] = in.resolve(f);
  bool with_rank = !no_crk && f.q() <= 16;
  cmap::CompletenessReport rep =
      cmap::is_complete(f, t, with_rank, max_n, c.node_budget);

  json j = report_header("analyze", f);
  j["input"] = desc;
  j["is_permutation"] = rep.is_perm;
  j["is_complete"] = rep.is_complete;
  j["linearity"] = rep.linearity;
  j["value_set_size"] = cmap::value_set_size(t);
  j["v_f_plus_x_size"] = rep.v_f_plus_x;
  j["crk"] = rep.crk ? rank_json(*rep.crk) : json(nullptr);
  if (!no_crk && !rep.crk && !rep.is_perm)
    j["note"] = "crk undefined: not a permutation";
  else if (!no_crk && !rep.crk)
    j["note"] = "crk skipped: rank search caps at q <= 16";

  std::vector<std::string> head = {"field",          "is_permutation",
                                   "is_complete",    "linearity",
                                   "value_set_size", "v_f_plus_x_size",
                                   "crk"};
  std::vector<std::vector<std::string>> rows = {
      {f.spec_string(), std::to_string(rep.is_perm),
       std::to_string(rep.is_complete), std::to_string(rep.linearity),
       std::to_string(cmap::value_set_size(t)),
       std::to_string(rep.v_f_plus_x),
       rep.crk ? rank_string(*rep.crk) : ""}};
  emit(c, j, head, rows);
  return 0;
}

int cmd_rank(const Common& c, const TableInput& in, int max_n) {
  Field f = Field::parse(c.field);
  auto [t, desc] = in.resolve(f);
  if (!cmap::is_permutation(t))
    throw std::invalid_argument("rank undefined: table is not a permutation");
  if (max_n < 0) max_n = cmap::rank_bound(f.q());
  cmap::RankResult r = cmap::carlitz_rank(f, t, max_n, c.node_budget);

  json j = report_header("rank", f);
  j["input"] = desc;
  j["max_n"] = max_n;
  j["rank"] = rank_json(r);
  j["nodes"] = r.nodes;
  emit(c, j, {"field", "max_n", "rank", "nodes"},
       {{f.spec_string(), std::to_string(max_n), rank_string(r),
         std::to_string(r.nodes)}});
  return 0;
}

int cmd_verify_thm1(const Common& c) {
  Field f = Field::parse(c.field);
  cmap::Thm1Report rep = cmap::theorem1_verify(f, c.effective_jobs());

  json j = report_header("verify-thm1", f);
  j["linearity_bound"] = rep.lin_bound;
  j["rank_bound"] = rep.rk_bound;
  json levels = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& lvl : rep.levels) {
    json l;
    l["n"] = lvl.n;
    l["reps"] = lvl.reps;
    l["distinct_tables"] = lvl.distinct_tables;
    l["complete"] = lvl.complete;
    l["below_bound"] = lvl.below_bound;
    l["min_complete_linearity"] = lvl.min_complete_linearity;
    levels.push_back(l);
    rows.push_back({std::to_string(lvl.n), std::to_string(lvl.reps),
                    std::to_string(lvl.distinct_tables),
                    std::to_string(lvl.complete),
                    std::to_string(lvl.below_bound),
                    std::to_string(lvl.min_complete_linearity)});
  }
  j["levels"] = levels;
  j["violations"] = rep.violations;
  j["affine_exceptions"] = rep.affine_exceptions;
  json wits = json::array();
  for (const auto& w : rep.witnesses) {
    json ww;
    ww["n"] = w.n;
    ww["coeffs"] = w.coeffs;
    ww["linearity"] = w.linearity;
    wits.push_back(ww);
  }
  j["witnesses"] = wits;
  j["ok"] = rep.ok();
  emit(c, j,
       {"n", "reps", "distinct_tables", "complete", "below_bound",
        "min_complete_linearity"},
       rows);
  return rep.ok() ? 0 : 2;
}

int cmd_census(const Common& c, bool disc) {
  Field f = Field::parse(c.field);
  cmap::CensusSweep s = disc ? cmap::discriminant_census_sweep(f)
                             : cmap::trace_census_sweep(f);
  json j = report_header(disc ? "census-disc" : "census-trace", f);
  j["cases"] = s.cases;
  j["mismatches"] = s.mismatches;
  json rows_j = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : s.rows) {
    json rj;
    rj["c0"] = r.c0;
    rj["alpha_n"] = r.alpha;
    if (disc) rj["n_even"] = static_cast<bool>(r.n_even);
    rj["count"] = r.count;
    rj["expected"] = r.expected;
    rows_j.push_back(rj);
    std::vector<std::string> row = {std::to_string(r.c0),
                                    std::to_string(r.alpha)};
    if (disc) row.push_back(std::to_string(r.n_even));
    row.push_back(std::to_string(r.count));
    row.push_back(std::to_string(r.expected));
    rows.push_back(row);
  }
  j["rows"] = rows_j;
  j["ok"] = s.ok();
  std::vector<std::string> head =
      disc ? std::vector<std::string>{"c0", "alpha_n", "n_even", "count",
                                      "expected"}
           : std::vector<std::string>{"c0", "alpha_n", "count", "expected"};
  emit(c, j, head, rows);
  return s.ok() ? 0 : 2;
}

int cmd_verify_prop(const Common& c, int prop) {
  Field f = Field::parse(c.field);
  cmap::PropSweep s = prop == 1 ? cmap::prop1_sweep(f) : cmap::prop2_sweep(f);
  json j = report_header("verify-prop", f);
  j["prop"] = prop;
  j["cases"] = s.cases;
  j["mismatches"] = s.mismatches;
  if (prop == 2) j["hypothesis_skips"] = s.hypothesis_skips;
  json rows_j = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : s.rows) {
    json rj;
    rj["c0"] = r.c0;
    if (prop == 2) rj["c1"] = r.c1;
    rj["predicted"] = r.predicted ? json(*r.predicted) : json(nullptr);
    rj["actual"] = r.actual;
    rows_j.push_back(rj);
    std::vector<std::string> row = {std::to_string(r.c0)};
    if (prop == 2) row.push_back(std::to_string(r.c1));
    row.push_back(r.predicted ? std::to_string(*r.predicted) : "");
    row.push_back(std::to_string(r.actual));
    rows.push_back(row);
  }
  j["rows"] = rows_j;
  j["ok"] = s.ok();
  std::vector<std::string> head =
      prop == 2 ? std::vector<std::string>{"c0", "c1", "predicted", "actual"}
                : std::vector<std::string>{"c0", "predicted", "actual"};
  emit(c, j, head, rows);
  return s.ok() ? 0 : 2;
}

int cmd_bounds(const Common& c, const std::string& rep_str) {
  Field f = Field::parse(c.field);
  cmap::AnyRep any = cmap::parse_rep(f, rep_str);
  cmap::NormalizedRep nr = std::visit(
      [&](const auto& r) -> cmap::NormalizedRep {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cmap::CarlitzRep>)
          return cmap::normalize(f, r).rep;
        else
          return r;
      },
      any);
  cmap::BoundsReport b = cmap::theorem2_bounds(f, nr);

  json j = report_header("bounds", f);
  j["rep"] = cmap::rep_string(nr);
  j["n"] = b.n;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["actual"] = b.actual;
  j["agreements"] = b.agreements;
  j["preconditions"] = b.preconditions;
  j["ok"] = b.ok;
  emit(c, j,
       {"rep", "n", "lower", "upper", "actual", "agreements", "preconditions",
        "ok"},
       {{"\"" + cmap::rep_string(nr) + "\"", std::to_string(b.n),
         std::to_string(b.lower), std::to_string(b.upper),
         std::to_string(b.actual), std::to_string(b.agreements),
         std::to_string(b.preconditions), std::to_string(b.ok)}});
  bool violation = b.preconditions && !b.ok;
  return violation ? 2 : 0;
}

int cmd_search(const Common& c, int n, int cap, std::uint64_t sample,
               std::size_t max_witnesses) {
  Field f = Field::parse(c.field);
  cmap::SearchOptions opt;
  opt.sample = sample;
  opt.seed = c.seed;
  opt.max_witnesses = max_witnesses;
  opt.jobs = c.effective_jobs();
  opt.node_budget = c.node_budget;
  cmap::SearchReport rep = cmap::search_complete(f, n, cap, opt);

  json j = report_header("search-complete", f);
  j["n"] = rep.n;
  j["linearity_cap"] = rep.linearity_cap;
  j["exhaustive"] = rep.exhaustive;
  if (!rep.exhaustive) j["seed"] = c.seed;
  j["reps_scanned"] = rep.reps_scanned;
  j["complete_hits"] = rep.complete_hits;
  j["qualifying_tables"] = rep.qualifying_tables;
  json wits = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& w : rep.witnesses) {
    json ww;
    ww["rep"] = cmap::rep_string(w.rep);
    ww["linearity"] = w.linearity;
    ww["rank"] = w.rank;
    ww["cert"] = cmap::rank_cert_name(w.cert);
    wits.push_back(ww);
    rows.push_back({"\"" + cmap::rep_string(w.rep) + "\"",
                    std::to_string(w.linearity), std::to_string(w.rank),
                    cmap::rank_cert_name(w.cert)});
  }
  j["witnesses"] = wits;
  j["found"] = rep.found();
  emit(c, j, {"rep", "linearity", "rank", "cert"}, rows);
  return rep.found() ? 0 : 2;
}

int cmd_verify_mann(const Common& c) {
  Field f = Field::parse(c.field);
  cmap::MannReport rep = cmap::mann_sweep(f);
  json j = report_header("verify-mann", f);
  j["complete_a"] = rep.complete_a;
  j["criterion_a"] = rep.criterion_a;
  j["agree"] = rep.agree;
  std::vector<std::vector<std::string>> rows;
  for (Elem a = 1; a < f.q(); ++a) {
    bool comp = std::binary_search(rep.complete_a.begin(),
                                   rep.complete_a.end(), a);
    bool crit = std::binary_search(rep.criterion_a.begin(),
                                   rep.criterion_a.end(), a);
    rows.push_back({std::to_string(a), std::to_string(comp),
                    std::to_string(crit)});
  }
  emit(c, j, {"a", "complete", "criterion"}, rows);
  return rep.agree ? 0 : 2;
}

int cmd_repro(const Common& c, const std::string& out_path, int only) {
  std::vector<cmap::repro::CriterionResult> results;
  if (only > 0)
    results.push_back(cmap::repro::run_criterion(only, c.effective_jobs()));
  else
    results = cmap::repro::run_all(c.effective_jobs());

  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    // Matrix on stdout is timing-free so identical runs emit identical bytes.
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name
              << "  " << r.detail << "\n";
    std::cerr << "# criterion " << r.id << ": " << r.seconds << " s (budget "
              << r.budget_seconds << " s)\n";
  }
  std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";

  if (!out_path.empty()) {
    json j;
    j["schema"] = 1;
    j["command"] = "repro-paper";
    json arr = json::array();
    for (const auto& r : results) {
      json rj;
      rj["id"] = r.id;
      rj["name"] = r.name;
      rj["pass"] = r.pass;
      rj["detail"] = r.detail;
      arr.push_back(rj);
    }
    j["criteria"] = arr;
    j["all_pass"] = all_pass;
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carlitz-rank toolkit for permutation polynomials over GF(q)"};
  app.require_subcommand(1);

  Common common;
  TableInput analyze_in, rank_in;
  int analyze_max_n = -1, rank_max_n = -1;
  bool no_crk = false;
  int prop_n = 1;
  std::string bounds_rep;
  int search_n = 1, search_cap = 0;
  std::uint64_t search_sample = 0;
  std::size_t search_witnesses = 8;
  std::string repro_out;
  int repro_only = 0;

  auto* a = app.add_subcommand(
      "analyze", "Completeness, linearity, value sets and rank of one map");
  add_common(a, common);
  analyze_in.add_options(a);
  a->add_option("--max-n", analyze_max_n,
                "Rank search depth (default floor(q/2))");
  a->add_flag("--no-crk", no_crk, "Skip the rank search");

  auto* rk = app.add_subcommand("rank", "Carlitz rank of one permutation");
  add_common(rk, common);
  rank_in.add_options(rk);
  rk->add_option("--max-n", rank_max_n,
                 "Rank search depth (default floor(q/2))");

  auto* t1 = app.add_subcommand(
      "verify-thm1", "Exhaust low-rank reps; complete maps must have high "
                     "linearity");
  add_common(t1, common);

  auto* cd = app.add_subcommand("census-disc",
                                "Discriminant census vs closed form (odd q)");
  add_common(cd, common);
  auto* ct = app.add_subcommand("census-trace",
                                "Trace census vs closed form (even q)");
  add_common(ct, common);

  auto* vp = app.add_subcommand("verify-prop",
                                "Exact value-set formulas vs brute force");
  add_common(vp, common);
  vp->add_option("--n", prop_n, "Chain length: 1 or 2")
      ->required()
      ->check(CLI::IsMember({1, 2}));

  auto* bd = app.add_subcommand("bounds", "Value-set envelope for one rep");
  add_common(bd, common);
  bd->add_option("--rep", bounds_rep, "Rep string (full or normalized)")
      ->required();

  auto* sc = app.add_subcommand(
      "search-complete", "Find complete maps of given rank below a linearity "
                         "cap");
  add_common(sc, common);
  sc->add_option("--n", search_n, "Chain length")->required();
  sc->add_option("--cap", search_cap, "Strict linearity cap")->required();
  sc->add_option("--sample", search_sample,
                 "Sample this many reps instead of exhausting");
  sc->add_option("--max-witnesses", search_witnesses,
                 "Witness list cap")->capture_default_str();

  auto* vm = app.add_subcommand("verify-mann",
                                "Complete maps a x^p vs the power criterion");
  add_common(vm, common);

  auto* rp = app.add_subcommand("repro-paper",
                                "Run every acceptance check end-to-end");
  add_common(rp, common, /*field_required=*/false);
  rp->add_option("--out", repro_out, "Write the matrix as JSON here");
  rp->add_option("--only", repro_only, "Run a single criterion (1-10)")
      ->check(CLI::Range(1, cmap::repro::kNumCriteria));

  int code = 0;
  auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
    if (a->parsed())
      code = cmd_analyze(common, analyze_in, analyze_max_n, no_crk);
    else if (rk->parsed())
      code = cmd_rank(common, rank_in, rank_max_n);
    else if (t1->parsed())
      code = cmd_verify_thm1(common);
    else if (cd->parsed())
      code = cmd_census(common, /*disc=*/true);
    else if (ct->parsed())
      code = cmd_census(common, /*disc=*/false);
    else if (vp->parsed())
      code = cmd_verify_prop(common, prop_n);
    else if (bd->parsed())
      code = cmd_bounds(common, bounds_rep);
    else if (sc->parsed())
      code = cmd_search(common, search_n, search_cap, search_sample,
                        search_witnesses);
    else if (vm->parsed())
      code = cmd_verify_mann(common);
    else if (rp->parsed())
      code = cmd_repro(common, repro_out, repro_only);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  } catch (const cmap::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (common.time_budget > 0) {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (elapsed > common.time_budget) {
      std::cerr << "time budget exceeded: " << elapsed << " s > "
                << common.time_budget << " s\n";
      return 3;
    }
  }
  return code;
}
