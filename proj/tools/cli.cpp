#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "unital/charspec.hpp"
#include "unital/design_io.hpp"
#include "unital/gf2rank.hpp"
#include "unital/kloosterman.hpp"

namespace unital::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
  std::uint32_t p = 3;
  std::uint32_t m = 1;
  std::string modulus;
  std::string f = "square";
  std::string theta = "auto";
  std::string engine = "auto";
  bool full = false;
  bool no_early_stop = false;
  std::string out;
  std::string cache;
  unsigned threads = 1;
  std::size_t sample = 0;
  std::string q_list = "3,5,7,9";
  bool no_timing = false;
};

class Failure : public std::runtime_error {
 public:
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

struct Instance {
  TowerPtr tower;
  std::optional<PlanarFunction> f;
  ComponentPair comps;
  ThetaSetup setup;
};

TowerPtr make_tower(std::uint32_t p, std::uint32_t m, const std::string& modulus) {
  std::optional<Poly> ext;
  if (!modulus.empty()) ext = modulus_from_string(modulus);
  return Tower::make(p, m, std::nullopt, ext);
}

ThetaSetup resolve_theta(const Instance& in, const std::string& selector) {
  const Tower& T = *in.tower;
  if (selector == "auto") {
    if (in.f->family() == PlanarFamily::Square) return construct_theta(T);
    const auto all = find_thetas(in.comps, T);
    if (all.empty()) throw Failure(1, "no theta satisfies the fiber condition for " + in.f->name());
    return all.front();
  }
  std::size_t used = 0;
  unsigned long idx = 0;
  try {
    idx = std::stoul(selector, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != selector.size() || idx == 0 || idx >= T.ext().size()) {
    throw Failure(2, "--theta must be 'auto' or a nonzero element index below " + std::to_string(T.ext().size()));
  }
  const auto setup = make_theta_setup(T, Elem{static_cast<std::uint32_t>(idx)});
  if (!fiber_condition(in.comps, T, setup)) {
    throw Failure(1, "theta index " + selector + " fails the fiber condition");
  }
  return setup;
}

Instance make_instance(const Options& o, const std::string& f_selector, bool check_planarity) {
  Instance in;
  in.tower = make_tower(o.p, o.m, o.modulus);
  in.f = planar_from_selector(f_selector, in.tower->ext_ptr());
  if (check_planarity) {
    std::optional<std::size_t> sample;
    if (o.sample) sample = o.sample;
    const auto r = check_planar(*in.f, sample);
    if (!r.planar) {
      throw Failure(1, "planarity: " + in.f->name() + " is not planar, witness a=" + std::to_string(r.witness->idx));
    }
  }
  in.comps = components(*in.f, *in.tower);
  in.setup = resolve_theta(in, o.theta);
  return in;
}

void header(std::ostream& os, const Instance& in) {
  const Tower& T = *in.tower;
  os << "# p=" << T.p() << " m=" << T.m() << " q=" << T.q() << " f=" << in.f->name() << '\n';
  os << "# modulus GF(q)=" << T.base().modulus_string() << " GF(q^2)=" << T.ext().modulus_string() << '\n';
  os << "# xi=" << T.xi().idx << " alpha=" << T.alpha().idx << " theta=" << in.setup.theta.idx
     << " theta0=" << in.setup.theta0.idx << " theta1=" << in.setup.theta1.idx << '\n';
}

DesignInfo expected_info(const Instance& in) {
  const Tower& T = *in.tower;
  return DesignInfo{T.p(), T.m(), T.q(), in.f->name(), in.setup.theta.idx, T.ext().modulus_string()};
}

UnitalDesign obtain_design(const Instance& in, const std::string& cache_dir, std::ostream& err) {
  auto build = [&] { return build_unital(*in.f, in.comps, *in.tower, in.setup); };
  if (cache_dir.empty()) return build();
  auto c = load_or_build(cache_dir, expected_info(in), in.f->id(), build);
  if (c.rebuilt) err << "cache: rebuilt invalid entry for q=" << in.tower->q() << '\n';
  return std::move(c.design);
}

void write_artifact(const std::string& dir, const std::string& name, const std::string& content) {
  if (dir.empty()) return;
  write_file_atomic(fs::path(dir) / name, content);
}

std::string stem(const Instance& in) {
  return "p" + std::to_string(in.tower->p()) + "m" + std::to_string(in.tower->m()) + "f" + in.f->id() + "t" +
         std::to_string(in.setup.theta.idx);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  Instance in;
  try {
    in = make_instance(o, o.f, true);
  } catch (const NotPlanarError& e) {
    out << "planarity: FAIL\n  witness: a=" << e.witness().idx << '\n';
    return 1;
  } catch (const Failure& e) {
    if (e.code != 1) throw;
    out << e.what() << '\n';
    return 1;
  }
  header(out, in);
  const Tower& T = *in.tower;
  const std::uint32_t q = T.q();
  bool ok = true;
  auto show = [&](const VerifyReport& r) {
    out << r << '\n';
    ok = ok && r.passed();
  };

  VerifyReport planar("planarity");
  planar.tally("shifts_checked", static_cast<std::int64_t>(check_planar(*in.f, o.sample ? std::optional<std::size_t>(o.sample) : std::nullopt).shifts_checked));
  const bool normal = is_normal(*in.f);
  planar.tally("normal", normal);
  show(planar);

  VerifyReport fiber("fiber-condition");
  if (!fiber_condition(in.comps, T, in.setup)) fiber.fail("theta=" + std::to_string(in.setup.theta.idx));
  show(fiber);

  const ShiftPlane plane(*in.f);
  show(verify_plane(plane));

  const auto U = obtain_design(in, o.cache, err);
  if (q <= 9) {
    show(check_design(U));
  } else {
    show(spot_check_design(U, 1000000));
  }
  show(verify_unital_in_plane(U, plane, T, in.setup));
  if (normal) {
    show(verify_ovals(U, plane, T, in.setup));
  } else {
    out << "ovals: skipped (f is not normal)\n";
  }
  show(verify_transitivity(U, T));
  out << (ok ? "verify: pass" : "verify: FAIL") << '\n';
  return ok ? 0 : 1;
}

// ------------------------------------------------------------ find-theta

int cmd_find_theta(const Options& o, std::ostream& out, std::ostream&) {
  Instance in;
  in.tower = make_tower(o.p, o.m, o.modulus);
  in.f = planar_from_selector(o.f, in.tower->ext_ptr());
  in.comps = components(*in.f, *in.tower);
  const auto all = find_thetas(in.comps, *in.tower);
  const Tower& T = *in.tower;
  out << "# p=" << T.p() << " m=" << T.m() << " q=" << T.q() << " f=" << in.f->name() << '\n';
  out << "# modulus GF(q)=" << T.base().modulus_string() << " GF(q^2)=" << T.ext().modulus_string() << '\n';
  out << "# xi=" << T.xi().idx << " alpha=" << T.alpha().idx << '\n';
  out << "admissible=" << all.size() << '\n';
  out << "theta_index,theta0,theta1,norm,norm_is_square\n";
  for (const auto& s : all) {
    const Elem n = T.norm(s.theta);
    out << s.theta.idx << ',' << s.theta0.idx << ',' << s.theta1.idx << ',' << n.idx << ','
        << (T.base().is_square(n) ? 1 : 0) << '\n';
  }
  return 0;
}

// ----------------------------------------------------------------- build

int cmd_build(const Options& o, std::ostream& out, std::ostream& err) {
  const auto in = make_instance(o, o.f, true);
  header(out, in);
  const auto U = obtain_design(in, o.cache, err);
  const auto check = U.q() <= 9 ? check_design(U) : spot_check_design(U, 1000000);
  out << check << '\n';
  out << "points=" << U.num_points() << " blocks=" << U.num_blocks() << '\n';
  if (!o.out.empty()) {
    std::ostringstream os;
    write_design(os, U);
    const std::string name = "design_" + stem(in) + ".txt";
    write_artifact(o.out, name, os.str());
    out << "wrote " << (fs::path(o.out) / name).string() << '\n';
  }
  return check.passed() ? 0 : 1;
}

// ------------------------------------------------------------ rank / spectrum

struct RankRow {
  Json json;
  std::optional<std::uint64_t> gf2, spec;
  std::optional<SpectrumResult> spectrum;
  bool chain_ok = true;
};

Json opt_json(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

RankRow compute_ranks(const Options& o, const Instance& in, bool run_gf2, bool run_spec, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const Tower& T = *in.tower;
  RankRow row;
  std::optional<UnitalDesign> U;
  const bool normal = is_normal(*in.f);
  if (run_gf2 || !normal) U = obtain_design(in, o.cache, err);
  if (run_gf2) row.gf2 = rank2_of_unital(*U, true, !o.no_early_stop).rank;
  if (run_spec) {
    const SpectrumContext ctx(in.tower, *in.f, in.comps, in.setup);
    SpectrumOptions so;
    so.threads = std::max(1u, o.threads);
    so.design = U ? &*U : nullptr;
    row.spectrum = spectrum_size(ctx, so);
    row.spec = row.spectrum->size;
  }
  const double wall = ms_since(t0);
  const auto b = bounds(T.p(), T.m());
  const auto rank = row.gf2 ? row.gf2 : row.spec;
  if (rank && in.f->family() == PlanarFamily::Square) {
    row.chain_ok = *rank <= b.upper && *rank >= b.leung_xiang && (!b.corollary || *rank >= *b.corollary);
  }
  Json j;
  j["q"] = T.q();
  j["p"] = T.p();
  j["m"] = T.m();
  j["modulus"] = T.ext().modulus_string();
  j["f"] = in.f->name();
  j["theta_index"] = in.setup.theta.idx;
  j["rank_gf2"] = opt_json(row.gf2);
  j["rank_spectrum"] = opt_json(row.spec);
  j["upper_bound"] = b.upper;
  j["lx_bound"] = b.leung_xiang;
  j["corollary_bound"] = opt_json(b.corollary);
  j["conjecture_match"] = rank ? Json(*rank == b.upper) : Json(nullptr);
  j["wall_ms"] = o.no_timing ? Json(nullptr) : Json(static_cast<std::int64_t>(wall + 0.5));
  row.json = std::move(j);
  return row;
}

std::pair<bool, bool> engines_for(const Options& o, std::uint32_t q) {
  std::string e = o.engine;
  if (e == "auto") e = q >= 27 && !o.full ? "spectrum" : "both";
  if (e == "gf2") return {true, false};
  if (e == "spectrum") return {false, true};
  if (e == "both") return {true, true};
  throw Failure(2, "--engine must be gf2, spectrum, both or auto");
}

int finish_rank(const RankRow& row, std::ostream& err) {
  if (row.gf2 && row.spec && *row.gf2 != *row.spec) {
    err << "error: engines disagree: gf2 " << *row.gf2 << " vs spectrum " << *row.spec << '\n';
    return 3;
  }
  if (!row.chain_ok) {
    err << "error: rank outside the bound chain\n";
    return 1;
  }
  return 0;
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream& err) {
  const auto in = make_instance(o, o.f, false);
  const auto [g, s] = engines_for(o, in.tower->q());
  const auto row = compute_ranks(o, in, g, s, err);
  const std::string text = row.json.dump(2) + "\n";
  write_artifact(o.out, "rank_" + stem(in) + ".json", text);
  out << text;
  return finish_rank(row, err);
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  const auto in = make_instance(o, o.f, false);
  header(out, in);
  const auto row = compute_ranks(o, in, false, true, err);
  const auto& sp = *row.spectrum;
  out << "spectrum_size=" << sp.size << " upper_bound=" << row.json["upper_bound"]
      << " conjecture_match=" << row.json["conjecture_match"] << '\n';
  write_artifact(o.out, "spectrum_" + stem(in) + ".hex", sp.bitmap_hex() + "\n");
  write_artifact(o.out, "spectrum_" + stem(in) + ".csv", sp.witness_csv());
  write_artifact(o.out, "spectrum_" + stem(in) + ".json", row.json.dump(2) + "\n");
  return finish_rank(row, err);
}

// ----------------------------------------------------------- kloosterman

int cmd_kloosterman(const Options& o, std::ostream& out, std::ostream&) {
  const auto F = Field::make(o.p, o.m);
  const auto table = kloosterman_table(*F);
  std::ostringstream os;
  os << kloosterman_csv(*F, table);
  bool ok = true;
  if (o.p == 3) {
    const auto c = count_classes(*F);
    const auto r = verify_classification(*F);
    ok = r.passed();
    os << "# case_a=" << c.a << " case_b=" << c.b << " case_c=" << c.c << " expected_b=" << c.expected_b
       << " expected_c=" << c.expected_c << " mismatches=" << c.mismatches << " sum_K=" << c.sum_of_values << '\n';
    os << "# classification: " << (ok ? "pass" : "FAIL") << '\n';
    for (const auto& w : r.witnesses) os << "#   " << w << '\n';
  }
  write_artifact(o.out, "kloosterman_p" + std::to_string(o.p) + "m" + std::to_string(o.m) + ".csv", os.str());
  out << os.str();
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- report

std::pair<std::uint32_t, std::uint32_t> split_prime_power(std::uint64_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p) continue;
    std::uint32_t m = 0;
    while (q % p == 0) {
      q /= p;
      ++m;
    }
    if (q != 1) break;
    return {p, m};
  }
  throw Failure(2, "--q entries must be odd prime powers");
}

std::string cell(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::uint64_t> qs;
  {
    std::stringstream ss(o.q_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        qs.push_back(std::stoull(tok));
      } catch (const std::exception&) {
        throw Failure(2, "--q: bad entry '" + tok + "'");
      }
    }
  }
  Options ro = o;
  if (ro.cache.empty()) ro.cache = "cache";
  ro.f = "square";
  ro.theta = "auto";
  ro.modulus.clear();

  Json rows = Json::array(), criteria = Json::array(), kl = Json::array();
  int status = 0;
  std::ostringstream table;
  table << pad("q", 4) << pad("theta", 7) << pad("rank_gf2", 10) << pad("rank_spec", 11) << pad("upper", 8)
        << pad("lx", 8) << pad("corollary", 11) << pad("match", 7) << '\n';
  for (const auto q : qs) {
    const auto [p, m] = split_prime_power(q);
    if (p == 2) throw Failure(2, "--q entries must be odd prime powers");
    ro.p = p;
    ro.m = m;
    const auto in = make_instance(ro, "square", false);
    const bool gf2 = q < 27 || o.full;
    const auto row = compute_ranks(ro, in, gf2, true, err);
    if (const int s = finish_rank(row, err)) status = s;
    const Json& j = row.json;
    table << pad(std::to_string(q), 4) << pad(cell(j["theta_index"]), 7) << pad(cell(j["rank_gf2"]), 10)
          << pad(cell(j["rank_spectrum"]), 11) << pad(cell(j["upper_bound"]), 8) << pad(cell(j["lx_bound"]), 8)
          << pad(cell(j["corollary_bound"]), 11) << pad(cell(j["conjecture_match"]), 7) << '\n';
    rows.push_back(j);

    if (p == 3) {
      const Tower& T = *in.tower;
      const SpectrumContext ctx(in.tower, *in.f, in.comps, in.setup);
      const auto ktab = kloosterman_table(T.base());
      std::uint64_t triples = 0, met = 0, bad = 0;
      for (std::uint32_t s = 1; s < q; ++s) {
        for (std::uint32_t w = 1; w < q; ++w) {
          for (bool u_side : {true, false}) {
            const Elem u{u_side ? s : 0}, v{u_side ? 0 : s};
            ++triples;
            if (!thm_membership_criterion(T, in.setup, ktab, u, v, Elem{w}).criterion_met) continue;
            ++met;
            if (!row.spectrum->member[character_index({u, v, Elem{w}}, static_cast<std::uint32_t>(q))]) ++bad;
          }
        }
      }
      if (bad) status = 1;
      criteria.push_back(Json{{"q", q}, {"triples", triples}, {"criterion_met", met}, {"counterexamples", bad}});
      const auto c = count_classes(T.base());
      if (c.mismatches || c.b != c.expected_b || c.c != c.expected_c) status = 1;
      kl.push_back(Json{{"q", q},
                        {"case_a", c.a},
                        {"case_b", c.b},
                        {"case_c", c.c},
                        {"expected_b", c.expected_b},
                        {"expected_c", c.expected_c},
                        {"mismatches", c.mismatches},
                        {"sum_K", c.sum_of_values}});
    }
  }
  if (!criteria.empty()) {
    table << "\ncriterion cross-check (exactly one of u, v zero, w != 0)\n";
    for (const auto& c : criteria) {
      table << "  q=" << c["q"] << " triples=" << c["triples"] << " criterion_met=" << c["criterion_met"]
            << " counterexamples=" << c["counterexamples"] << '\n';
    }
    table << "\nKloosterman classes mod 4\n";
    for (const auto& c : kl) {
      table << "  q=" << c["q"] << " a=" << c["case_a"] << " b=" << c["case_b"] << " (expected " << c["expected_b"]
            << ") c=" << c["case_c"] << " (expected " << c["expected_c"] << ") mismatches=" << c["mismatches"]
            << '\n';
    }
  }
  Json report;
  report["rows"] = rows;
  report["criterion"] = criteria;
  report["kloosterman"] = kl;
  write_artifact(o.out, "report.json", report.dump(2) + "\n");
  write_artifact(o.out, "report.txt", table.str());
  out << table.str();
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Unitals in shift planes: construction, 2-ranks and character spectra"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1, 1);
  app.add_option("--p", o.p, "characteristic")->check(CLI::Range(3u, 1000u));
  app.add_option("--m", o.m, "GF(q) = GF(p^m)")->check(CLI::Range(1u, 16u));
  app.add_option("--modulus", o.modulus, "GF(q^2) modulus as c0,c1,...,c2m (monic)");
  app.add_option("--f", o.f, "square | cm:<k> | pow:<d> | user:<path>");
  app.add_option("--theta", o.theta, "auto | element index");
  app.add_option("--engine", o.engine, "gf2 | spectrum | both | auto")
      ->check(CLI::IsMember({"gf2", "spectrum", "both", "auto"}));
  app.add_flag("--full", o.full, "run the gf2 engine at q >= 27 too");
  app.add_flag("--no-early-stop", o.no_early_stop, "stream every block through the gf2 engine");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--cache", o.cache, "design cache directory")->envname("UNITAL_CACHE_DIR");
  app.add_option("--threads", o.threads, "spectrum worker threads")->envname("UNITAL_THREADS")->check(CLI::Range(1u, 256u));
  app.add_option("--sample", o.sample, "planarity check on this many random shifts");
  app.add_option("--q", o.q_list, "comma-separated q list for report");
  app.add_flag("--no-timing", o.no_timing, "write wall_ms as null");

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::ostream&, std::ostream&);
  };
  const Sub subs[] = {
      {"verify", "plane, planarity, unital, oval, design and transitivity checks", cmd_verify},
      {"find-theta", "list theta satisfying the fiber condition", cmd_find_theta},
      {"build", "build (or load) the design and optionally write it", cmd_build},
      {"rank", "2-rank by the gf2 and/or spectrum engine", cmd_rank},
      {"spectrum", "character spectrum with bitmap and witnesses", cmd_spectrum},
      {"kloosterman", "Kloosterman atlas and mod 4 classes", cmd_kloosterman},
      {"report", "ranks, bounds, criterion and Kloosterman tallies for a q list", cmd_report},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> handles;
  for (const auto& s : subs) handles.emplace_back(app.add_subcommand(s.name, s.help)->fallthrough(), &s);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    for (auto [h, s] : handles) {
      if (h->parsed()) return s->fn(o, out, err);
    }
  } catch (const Failure& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const NotPlanarError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace unital::cli
