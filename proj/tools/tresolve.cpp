#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "io.hpp"
#include "tres/matroid.hpp"
#include "tres/multigraded.hpp"
#include "tres/multiplicity.hpp"
#include "tres/tcomplex.hpp"

namespace {

using namespace tres;
using cli::InputDoc;
using cli::Json;

struct Options {
  std::string command;
  std::string input;
  std::string field;  // override; empty = take the document's field
  bool json = false;
  bool verify = false;
  bool dump_chains = false;
  int max_ground = 16;
};

struct Check {
  std::string id;
  bool ok = true;
  std::string note;
  std::vector<std::string> witnesses;

  void fail(std::string w) {
    ok = false;
    witnesses.push_back(std::move(w));
  }
};

bool all_ok(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.ok) return false;
  return true;
}

Json checks_json(const std::vector<Check>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) {
    Json j;
    j["id"] = c.id;
    j["ok"] = c.ok;
    if (!c.note.empty()) j["note"] = c.note;
    Json w = Json::array();
    for (const auto& s : c.witnesses) w.push_back(s);
    j["witnesses"] = std::move(w);
    out.push_back(std::move(j));
  }
  return out;
}

void print_checks(std::ostream& os, const std::vector<Check>& cs) {
  for (const auto& c : cs) {
    os << "check " << c.id << ": " << (c.ok ? "ok" : "FAIL");
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
    for (const auto& w : c.witnesses) os << "  - " << w << "\n";
  }
  os << "result: " << (all_ok(cs) ? "ok" : "FAIL") << "\n";
}

// The three checks on the scalar-matrix complexes: d∘d = 0 for T and T^+,
// the augmented complex resolves Coker φ, and T resolves Ker φ through the
// splicing map.
template <class K>
std::vector<Check> scalar_checks(const Representation<K>& rep) {
  auto rpt = verify_acyclic(rep);
  Check dd{"complex-property"}, ac{"tplus-acyclic"}, au{"augmentation-kernel"};
  for (const auto& f : rpt.failures) {
    if (f.find("compose to zero") != std::string::npos)
      dd.fail(f);
    else if (f.rfind("T^+", 0) == 0)
      ac.fail(f);
    else
      au.fail(f);
  }
  if (!rpt.t_plus_homology.empty())
    ac.note = "H_0 dim " + std::to_string(rpt.t_plus_homology.at(0));
  return {dd, ac, au};
}

template <class K>
std::pair<std::vector<Check>, std::optional<ResolutionReport>> graded_checks(
    const MultigradedPresentation<K>& p) {
  Check hom{"presentation-homogeneous"};
  for (const auto& v : validate(p))
    hom.fail("entry (" + std::to_string(v.row) + "," + std::to_string(v.col) +
             "): the row degree does not divide the column degree");
  if (!hom.ok) return {{hom}, std::nullopt};

  auto rpt = verify_resolution(p);
  Check rh{"resolution-homogeneous"}, rc{"resolution-complex"}, se{"strand-exactness"},
      pb{"pd-bound"};
  for (const auto& f : rpt.failures) {
    if (f.find("not multihomogeneous") != std::string::npos)
      rh.fail(f);
    else if (f.find("composite of the differentials") != std::string::npos)
      rc.fail(f);
    else if (f.rfind("strand ", 0) == 0)
      se.fail(f);
    else
      pb.fail(f);
  }
  se.note = std::to_string(rpt.strands_checked.size()) + " strands";
  pb.note = "length " + std::to_string(rpt.length) + " <= " + std::to_string(rpt.pd_bound);
  return {{hom, rh, rc, se, pb}, std::move(rpt)};
}

// Multiplicity dimension of a T-flat, memoized inside the representation.
template <class K>
int mult_dim(const Representation<K>& rep, const GroundSubset& I) {
  return multiplicity_space(rep, I).basis.dim();
}

template <class K>
Representation<K> make_rep(const InputDoc& doc, const Options& opt) {
  if (doc.cols > opt.max_ground)
    throw std::runtime_error("ground set exceeds --max-ground-set (" +
                             std::to_string(opt.max_ground) + ")");
  return Representation<K>(cli::parse_matrix<K>(doc), doc.labels, opt.max_ground);
}

// --- matroid ----------------------------------------------------------------

template <class K>
Json chains_json(const Representation<K>& rep) {
  Json out = Json::array();
  for (const auto& [lvl, recs] : t_flats(rep))
    for (const auto& rec : recs) {
      Json f;
      f["flat"] = cli::set_json(rec.set);
      Json cs = Json::array();
      for (const auto& ch : chains(rep, rec.set)) {
        Json c;
        Json flats = Json::array();
        for (const auto& s : ch.flats) flats.push_back(cli::set_json(s));
        c["flats"] = std::move(flats);
        Json vec = Json::array();
        for (const auto& x : chain_vector(rep, ch)) vec.push_back(to_string(x));
        c["vector"] = std::move(vec);
        cs.push_back(std::move(c));
      }
      f["chains"] = std::move(cs);
      out.push_back(std::move(f));
    }
  return out;
}

template <class K>
void print_chains(std::ostream& os, const Representation<K>& rep) {
  os << "chains:\n";
  for (const auto& [lvl, recs] : t_flats(rep))
    for (const auto& rec : recs) {
      os << "  " << cli::set_str(rec.set, rep.labels) << ":\n";
      for (const auto& ch : chains(rep, rec.set)) {
        os << "    ";
        for (std::size_t i = 0; i < ch.flats.size(); ++i) {
          if (i) os << " < ";
          os << cli::set_str(ch.flats[i], rep.labels);
        }
        os << "  value (";
        auto v = chain_vector(rep, ch);
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) os << ", ";
          os << to_string(v[i]);
        }
        os << ")\n";
      }
    }
}

template <class K>
int cmd_matroid(const InputDoc& doc, const Options& opt, const std::string& field) {
  auto rep = make_rep<K>(doc, opt);
  const auto& circ = circuits(rep);
  const auto& flats = t_flats(rep);
  GroundSubset all;
  for (int e = 0; e < rep.n(); ++e) all.push_back(e);
  const bool s_flat = rep.n() > 0 && is_t_flat(rep, all);

  if (opt.json) {
    Json out = cli::echo_input(doc, field);
    out["rank"] = rank_of_mask(rep, rep.full_mask());
    Json cj = Json::array();
    for (const auto& c : circ) cj.push_back(cli::set_json(c));
    out["circuits"] = std::move(cj);
    Json fj = Json::array();
    for (const auto& [lvl, recs] : flats)
      for (const auto& rec : recs) {
        Json r;
        r["set"] = cli::set_json(rec.set);
        r["level"] = rec.level;
        r["rank"] = rec.rank;
        r["mult"] = mult_dim(rep, rec.set);
        Json parts = Json::array();
        for (const auto& p : rec.t_parts) parts.push_back(cli::set_json(p));
        r["parts"] = std::move(parts);
        fj.push_back(std::move(r));
      }
    out["t_flats"] = std::move(fj);
    if (s_flat) {
      Json pj = Json::array();
      for (const auto& p : t_parts(rep, all)) pj.push_back(cli::set_json(p));
      out["t_partition"] = std::move(pj);
    } else {
      out["t_partition"] = nullptr;
    }
    if (opt.dump_chains) out["chains"] = chains_json(rep);
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "field: " << FieldTraits<K>::name() << "\n";
  std::cout << "ground set:";
  for (const auto& l : rep.labels) std::cout << " " << l;
  std::cout << "   (" << rep.n() << " elements, rank " << rank_of_mask(rep, rep.full_mask())
            << ")\n";
  std::cout << "circuits (" << circ.size() << "):";
  for (const auto& c : circ) std::cout << " " << cli::set_str(c, rep.labels);
  std::cout << "\n";
  std::cout << "T-flats:\n";
  for (const auto& [lvl, recs] : flats)
    for (const auto& rec : recs) {
      std::cout << "  level " << lvl << ": " << cli::set_str(rec.set, rep.labels) << "  rank "
                << rec.rank << "  mult " << mult_dim(rep, rec.set) << "  parts:";
      for (const auto& p : rec.t_parts) std::cout << " " << cli::set_str(p, rep.labels);
      std::cout << "\n";
    }
  std::cout << "T-partition of the ground set:";
  if (s_flat)
    for (const auto& p : t_parts(rep, all)) std::cout << " " << cli::set_str(p, rep.labels);
  else
    std::cout << " (the ground set is not a T-flat)";
  std::cout << "\n";
  if (opt.dump_chains) print_chains(std::cout, rep);
  return 0;
}

// --- tcomplex ---------------------------------------------------------------

template <class K>
Json tplus_json(const Representation<K>& rep, const VectorSpaceComplex<K>& c) {
  Json out;
  Json dims = Json::array();
  for (int n = 0; n <= c.hi; ++n) dims.push_back(c.dim_at(n));
  out["dims"] = std::move(dims);
  Json comps = Json::array();
  for (int n = 0; n <= c.hi; ++n) {
    Json comp;
    comp["hdeg"] = n;
    comp["dim"] = c.dim_at(n);
    Json gens = Json::array();
    if (n == 0) {
      for (int i = 0; i < c.dim_at(0); ++i) {
        Json g;
        g["tflat"] = Json::array();
        gens.push_back(std::move(g));
      }
    } else if (n == 1) {
      for (int a = 0; a < rep.n(); ++a) {
        Json g;
        g["tflat"] = cli::set_json({a});
        gens.push_back(std::move(g));
      }
    } else {
      for (const auto& b : c.blocks.at(n))
        for (int i = 0; i < b.dim; ++i) {
          Json g;
          g["tflat"] = cli::set_json(b.I);
          gens.push_back(std::move(g));
        }
    }
    comp["generators"] = std::move(gens);
    comps.push_back(std::move(comp));
  }
  out["components"] = std::move(comps);
  Json mats = Json::array();
  for (int n = 1; n <= c.hi; ++n) {
    Json m;
    m["hdeg"] = n;
    m["matrix"] = c.diff_at(n) ? cli::matrix_json(*c.diff_at(n))
                               : cli::matrix_json(Matrix<K>(c.dim_at(n - 1), c.dim_at(n)));
    mats.push_back(std::move(m));
  }
  out["matrices"] = std::move(mats);
  return out;
}

template <class K>
int cmd_tcomplex(const InputDoc& doc, const Options& opt, const std::string& field) {
  auto rep = make_rep<K>(doc, opt);
  auto tp = build_T_plus(rep);
  std::vector<Check> checks;
  if (opt.verify) checks = scalar_checks(rep);

  if (opt.json) {
    Json out = cli::echo_input(doc, field);
    out["t_plus"] = tplus_json(rep, tp);
    if (opt.verify) {
      out["checks"] = checks_json(checks);
      out["ok"] = all_ok(checks);
    }
    std::cout << out.dump(2) << "\n";
    return opt.verify && !all_ok(checks) ? 1 : 0;
  }

  std::cout << "field: " << FieldTraits<K>::name() << "\n";
  std::cout << "T^+ dims (hdeg " << tp.hi << "..0):";
  for (int n = tp.hi; n >= 0; --n) std::cout << " " << tp.dim_at(n);
  std::cout << "\n";
  std::cout << "components:\n";
  for (int n = 0; n <= tp.hi; ++n) {
    std::cout << "  hdeg " << n << ":";
    if (n == 0) {
      std::cout << " W (dim " << tp.dim_at(0) << ")";
    } else if (n == 1) {
      for (const auto& l : rep.labels) std::cout << " {" << l << "}";
    } else {
      for (const auto& b : tp.blocks.at(n)) {
        if (b.dim == 0) continue;
        std::cout << " " << cli::set_str(b.I, rep.labels);
        if (b.dim > 1) std::cout << "x" << b.dim;
      }
    }
    std::cout << "\n";
  }
  for (int n = 1; n <= tp.hi; ++n) {
    std::cout << "differential " << n << " (" << tp.dim_at(n - 1) << " x " << tp.dim_at(n)
              << "):\n";
    if (tp.diff_at(n)) cli::print_matrix(std::cout, *tp.diff_at(n), "  ");
  }
  if (opt.verify) print_checks(std::cout, checks);
  return opt.verify && !all_ok(checks) ? 1 : 0;
}

// --- resolve ----------------------------------------------------------------

// Generator listing of the resolution: target generators at hdeg 0, one
// singleton per column at hdeg 1, multiplicity-many per T-flat above.
template <class K>
Json resolution_components_json(const Representation<K>& rep, const MultigradedPresentation<K>& p,
                                const FreeComplex<K>& res) {
  Json comps = Json::array();
  for (int n = 0; n <= res.length(); ++n) {
    Json comp;
    comp["hdeg"] = n;
    comp["dim"] = res.rank_at(n);
    Json gens = Json::array();
    if (n == 0) {
      for (const auto& d : p.target_degrees) {
        Json g;
        g["tflat"] = Json::array();
        g["degree"] = cli::degree_json(d);
        gens.push_back(std::move(g));
      }
    } else if (n == 1) {
      for (int a = 0; a < rep.n(); ++a) {
        Json g;
        g["tflat"] = cli::set_json({a});
        g["degree"] = cli::degree_json(p.source_degrees[a]);
        gens.push_back(std::move(g));
      }
    } else {
      auto it = t_flats(rep).find(n - 2);
      if (it != t_flats(rep).end())
        for (const auto& rec : it->second)
          for (int i = 0; i < mult_dim(rep, rec.set); ++i) {
            Json g;
            g["tflat"] = cli::set_json(rec.set);
            g["degree"] = cli::degree_json(deg_of_set(p, rec.set));
            gens.push_back(std::move(g));
          }
    }
    comp["generators"] = std::move(gens);
    comps.push_back(std::move(comp));
  }
  return comps;
}

template <class K>
void print_resolution(std::ostream& os, const Representation<K>& rep,
                      const MultigradedPresentation<K>& p, const FreeComplex<K>& res) {
  os << "ranks:";
  for (int n = 0; n <= res.length(); ++n) os << " " << res.rank_at(n);
  os << "   (length " << res.length() << ")\n";
  os << "generators:\n";
  for (int n = 0; n <= res.length(); ++n) {
    os << "  hdeg " << n << ":";
    if (n == 0) {
      for (const auto& d : p.target_degrees) os << " " << to_string(d);
    } else if (n == 1) {
      for (int a = 0; a < rep.n(); ++a)
        os << " " << cli::set_str({a}, rep.labels) << ":" << to_string(p.source_degrees[a]);
    } else {
      auto it = t_flats(rep).find(n - 2);
      if (it != t_flats(rep).end())
        for (const auto& rec : it->second) {
          const int d = mult_dim(rep, rec.set);
          if (d == 0) continue;
          os << " " << cli::set_str(rec.set, rep.labels);
          if (d > 1) os << "x" << d;
          os << ":" << to_string(deg_of_set(p, rec.set));
        }
    }
    os << "\n";
  }
  for (int n = 1; n <= res.length(); ++n) {
    os << "differential " << n << " (" << res.rank_at(n - 1) << " x " << res.rank_at(n)
       << "):\n";
    cli::print_term_matrix(os, res.diff[n], "  ");
  }
}

template <class K>
int cmd_resolve(const InputDoc& doc, const Options& opt, const std::string& field) {
  if (!doc.graded)
    throw std::runtime_error(
        "resolve needs a graded input (ring_vars, source_degrees, target_degrees)");
  auto p = cli::parse_presentation<K>(doc);
  if (doc.cols > opt.max_ground)
    throw std::runtime_error("ground set exceeds --max-ground-set (" +
                             std::to_string(opt.max_ground) + ")");
  auto viol = validate(p);
  if (!viol.empty())
    throw std::runtime_error("the presentation is not multihomogeneous: entry (" +
                             std::to_string(viol.front().row) + "," +
                             std::to_string(viol.front().col) +
                             ") has a row degree that does not divide its column degree");
  auto res = build_resolution(p);
  Representation<K> rep(p.scalar, doc.labels, opt.max_ground);

  std::vector<Check> checks;
  std::optional<ResolutionReport> rpt;
  if (opt.verify) {
    auto [cs, r] = graded_checks(p);
    checks = std::move(cs);
    rpt = std::move(r);
  }

  if (opt.json) {
    Json out = cli::echo_input(doc, field);
    Json r;
    r["length"] = res.length();
    Json ranks = Json::array();
    for (int n = 0; n <= res.length(); ++n) ranks.push_back(res.rank_at(n));
    r["ranks"] = std::move(ranks);
    r["components"] = resolution_components_json(rep, p, res);
    Json mats = Json::array();
    for (int n = 1; n <= res.length(); ++n) {
      Json m;
      m["hdeg"] = n;
      auto tm = cli::term_matrix_json(res.diff[n]);
      for (auto& [k, v] : tm.items()) m[k] = std::move(v);
      mats.push_back(std::move(m));
    }
    r["matrices"] = std::move(mats);
    if (rpt) {
      r["rank_coker"] = rpt->rank_L;
      r["pd_bound"] = rpt->pd_bound;
    }
    out["resolution"] = std::move(r);
    if (opt.verify) {
      out["checks"] = checks_json(checks);
      out["ok"] = all_ok(checks);
    }
    std::cout << out.dump(2) << "\n";
    return opt.verify && !all_ok(checks) ? 1 : 0;
  }

  std::cout << "field: " << FieldTraits<K>::name() << "\n";
  print_resolution(std::cout, rep, p, res);
  if (opt.verify) {
    if (rpt) {
      std::cout << "coker rank: " << rpt->rank_L << "\n";
      std::cout << "pd bound: " << rpt->pd_bound << "\n";
    }
    print_checks(std::cout, checks);
  }
  return opt.verify && !all_ok(checks) ? 1 : 0;
}

// --- verify -----------------------------------------------------------------

template <class K>
int cmd_verify(const InputDoc& doc, const Options& opt, const std::string& field) {
  auto rep = make_rep<K>(doc, opt);
  auto checks = scalar_checks(rep);
  std::optional<ResolutionReport> rpt;
  bool skipped_resolution = false;
  if (doc.graded) {
    auto p = cli::parse_presentation<K>(doc);
    auto [cs, r] = graded_checks(p);
    skipped_resolution = !r.has_value();
    for (auto& c : cs) checks.push_back(std::move(c));
    rpt = std::move(r);
  }
  const bool ok = all_ok(checks);

  if (opt.json) {
    Json out = cli::echo_input(doc, field);
    auto tp = build_T_plus(rep);
    Json dims = Json::array();
    for (int n = 0; n <= tp.hi; ++n) dims.push_back(tp.dim_at(n));
    out["t_plus_dims"] = std::move(dims);
    if (rpt) {
      Json ranks = Json::array();
      for (int r : rpt->ranks) ranks.push_back(r);
      out["ranks"] = std::move(ranks);
      out["length"] = rpt->length;
      out["rank_coker"] = rpt->rank_L;
      out["pd_bound"] = rpt->pd_bound;
    }
    if (skipped_resolution) out["skipped"] = "resolution checks (invalid presentation)";
    out["checks"] = checks_json(checks);
    out["ok"] = ok;
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
  }

  std::cout << "field: " << FieldTraits<K>::name() << "\n";
  if (skipped_resolution)
    std::cout << "note: resolution checks skipped, the presentation is not"
                 " multihomogeneous\n";
  print_checks(std::cout, checks);
  return ok ? 0 : 1;
}

// --- dispatch ---------------------------------------------------------------

template <class K>
int run_command(const InputDoc& doc, const Options& opt, const std::string& field) {
  if (opt.command == "matroid") return cmd_matroid<K>(doc, opt, field);
  if (opt.command == "tcomplex") return cmd_tcomplex<K>(doc, opt, field);
  if (opt.command == "resolve") return cmd_resolve<K>(doc, opt, field);
  return cmd_verify<K>(doc, opt, field);
}

bool digits_only(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid-indexed complexes and multigraded free resolutions"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("input,--input", opt.input, "input JSON file")->required();
    sub->add_option("--field", opt.field, "scalar field: qq or fp:<prime> (overrides the file)");
    sub->add_flag("--json", opt.json, "emit a JSON document instead of text");
    sub->add_option("--max-ground-set", opt.max_ground, "largest accepted ground set")
        ->default_val(16);
  };
  auto* matroid =
      app.add_subcommand("matroid", "circuits, T-flats with multiplicities, T-partition");
  add_common(matroid);
  matroid->add_flag("--dump-chains", opt.dump_chains, "list chains and chain vectors");
  auto* tcomplex = app.add_subcommand("tcomplex", "the augmented complex of the scalar matrix");
  add_common(tcomplex);
  tcomplex->add_flag("--verify", opt.verify, "run the homology checks");
  auto* resolve = app.add_subcommand("resolve", "the multigraded free resolution");
  add_common(resolve);
  resolve->add_flag("--verify", opt.verify, "run the resolution checks");
  auto* verify = app.add_subcommand("verify", "run every check that applies to the input");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    auto doc = tres::cli::read_input(opt.input);
    const std::string f = opt.field.empty() ? doc.field : tres::cli::lower(opt.field);
    if (f == "qq") return run_command<tres::Rational>(doc, opt, f);
    if (f.rfind("fp:", 0) == 0 && digits_only(f.substr(3))) {
      tres::Fp::set_modulus(std::stoull(f.substr(3)));
      return run_command<tres::Fp>(doc, opt, f);
    }
    throw std::runtime_error("unknown field '" + f + "' (expected qq or fp:<prime>)");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
