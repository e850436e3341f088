#include "schreier/clirun.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "schreier/dsl.hpp"
#include "schreier/index.hpp"
#include "schreier/normspace.hpp"
#include "schreier/ramsey.hpp"
#include "schreier/selftest.hpp"

namespace schreier {

namespace {

using nlohmann::json;

struct CliError : std::runtime_error {
  CliError(int status_, std::string msg) : std::runtime_error(std::move(msg)), status(status_) {}
  int status;
};

struct Inconclusive : std::runtime_error {
  explicit Inconclusive(std::string msg) : std::runtime_error(std::move(msg)) {}
};

struct Options {
  std::string mode = "table";
  int bound = 30;
  int ground = 4;
  int depth = 3;
  int breadth = 5;
  int cap = 30;
  int support_limit = 24;
  std::string out_file;
};

struct Invocation {
  std::string verb;
  std::vector<std::string> args;
  Options opts;
};

long parse_flag_int(const std::string& flag, const std::string& value) {
  try {
    size_t used = 0;
    long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw CliError(2, "flag " + flag + " needs an integer, got '" + value + "'");
  }
}

Invocation parse_invocation(const std::vector<std::string>& argv) {
  Invocation inv;
  std::vector<std::string> positional;
  for (size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a.rfind("--", 0) != 0) {
      positional.push_back(a);
      continue;
    }
    std::string name = a.substr(2);
    std::string value;
    bool has_value = false;
    if (auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name = name.substr(0, eq);
      has_value = true;
    }
    auto need_value = [&]() -> std::string {
      if (has_value) return value;
      if (i + 1 >= argv.size()) throw CliError(2, "flag --" + name + " needs a value");
      return argv[++i];
    };
    if (name == "mode") {
      inv.opts.mode = need_value();
      if (inv.opts.mode != "table" && inv.opts.mode != "records")
        throw CliError(2, "--mode must be 'table' or 'records'");
    } else if (name == "bound") {
      inv.opts.bound = static_cast<int>(parse_flag_int(a, need_value()));
    } else if (name == "ground") {
      inv.opts.ground = static_cast<int>(parse_flag_int(a, need_value()));
    } else if (name == "depth") {
      inv.opts.depth = static_cast<int>(parse_flag_int(a, need_value()));
    } else if (name == "breadth") {
      inv.opts.breadth = static_cast<int>(parse_flag_int(a, need_value()));
    } else if (name == "cap") {
      inv.opts.cap = static_cast<int>(parse_flag_int(a, need_value()));
    } else if (name == "support-limit") {
      inv.opts.support_limit = static_cast<int>(parse_flag_int(a, need_value()));
    } else if (name == "out") {
      inv.opts.out_file = need_value();
    } else {
      throw CliError(2, "unknown flag --" + name);
    }
  }
  if (positional.empty()) throw CliError(2, "missing verb");
  inv.verb = positional.front();
  inv.args.assign(positional.begin() + 1, positional.end());
  return inv;
}

NormOptions norm_options(const Options& o) {
  NormOptions n;
  n.support_limit = o.support_limit;
  return n;
}

void require_args(const Invocation& inv, size_t lo, size_t hi) {
  if (inv.args.size() < lo || inv.args.size() > hi) {
    std::ostringstream os;
    os << "verb '" << inv.verb << "' takes " << lo;
    if (hi != lo) os << ".." << hi;
    os << " arguments, got " << inv.args.size();
    throw CliError(2, os.str());
  }
}

std::string joined_input(const Invocation& inv) {
  std::string s = inv.verb;
  for (const auto& a : inv.args) {
    s += ' ';
    s += a;
  }
  return s;
}

// One result line: records mode emits a JSON object with stable fields.
void emit(const Invocation& inv, std::ostream& out, const json& value,
          std::optional<json> witness = std::nullopt) {
  if (inv.opts.mode == "records") {
    json rec = {{"verb", inv.verb}, {"input", joined_input(inv)}, {"value", value}};
    if (witness) rec["witness"] = *witness;
    out << rec.dump() << '\n';
    return;
  }
  if (value.is_string()) {
    out << value.get<std::string>() << '\n';
  } else if (value.is_boolean()) {
    out << (value.get<bool>() ? "true" : "false") << '\n';
  } else {
    out << value.dump() << '\n';
  }
  if (witness) out << witness->dump(2) << '\n';
}

json embedding_to_json(const ExtendedEmbedding& emb) {
  json i = json::array(), e = json::array();
  for (const auto& [k, v] : emb.i_map) i.push_back({k.to_string(), v.to_string()});
  for (const auto& [k, v] : emb.e_map) e.push_back({k.to_string(), v.to_string()});
  return {{"ground", emb.src_ground}, {"i", i}, {"e", e}};
}

ExtendedEmbedding embedding_from_json(const json& j) {
  ExtendedEmbedding emb;
  emb.src_ground = j.at("ground").get<int>();
  for (const auto& pair : j.at("i"))
    emb.i_map[parse_finset(pair.at(0).get<std::string>())] =
        parse_finset(pair.at(1).get<std::string>());
  for (const auto& pair : j.at("e"))
    emb.e_map[parse_finset(pair.at(0).get<std::string>())] =
        parse_finset(pair.at(1).get<std::string>());
  return emb;
}

json load_witness_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(1, "cannot open witness file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw CliError(2, std::string("witness file is not valid JSON: ") + ex.what());
  }
  return j;
}

void maybe_write_file(const Options& opts, const json& j, std::ostream& err) {
  if (opts.out_file.empty()) return;
  std::ofstream out(opts.out_file);
  if (!out) {
    err << "warning: cannot write " << opts.out_file << '\n';
    return;
  }
  out << j.dump(2) << '\n';
}

std::vector<Rational> coeffs_on(const FinSet& e, const SparseVec& v) {
  if (!(v.support() == e))
    throw CliError(1, "coefficient vector support must equal the set " + e.to_string());
  std::vector<Rational> out;
  for (size_t i = 0; i < e.size(); ++i) out.push_back(v.at(e[i]));
  return out;
}

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto& args = inv.args;
  const std::string& verb = inv.verb;

  if (verb == "member") {
    require_args(inv, 2, 2);
    emit(inv, out, parse_family(args[0]).member(parse_finset(args[1])));
    return 0;
  }
  if (verb == "maximal") {
    require_args(inv, 2, 2);
    emit(inv, out, parse_family(args[0]).is_maximal(parse_finset(args[1])));
    return 0;
  }
  if (verb == "minext") {
    require_args(inv, 2, 2);
    auto ext = parse_family(args[0]).min_extension(parse_finset(args[1]));
    emit(inv, out, ext ? json(*ext) : json("maximal"));
    return 0;
  }
  if (verb == "decompose") {
    require_args(inv, 2, 2);
    auto blocks = parse_family(args[0]).standard_decomposition(parse_finset(args[1]));
    if (!blocks) throw CliError(1, "no standard decomposition: (min E) is not a member");
    json arr = json::array();
    for (const auto& b : *blocks) arr.push_back(b.to_string());
    emit(inv, out, arr);
    return 0;
  }
  if (verb == "admissible") {
    require_args(inv, 2, 64);
    Family f = parse_family(args[0]);
    std::vector<FinSet> blocks;
    for (size_t i = 1; i < args.size(); ++i) blocks.push_back(parse_finset(args[i]));
    emit(inv, out, f.is_admissible(blocks));
    return 0;
  }
  if (verb == "enumerate") {
    require_args(inv, 2, 2);
    Family f = parse_family(args[0]);
    long n = parse_flag_int("ground", args[1]);
    json arr = json::array();
    for (const auto& e : f.enumerate(static_cast<int>(n))) arr.push_back(e.to_string());
    emit(inv, out, arr);
    return 0;
  }
  if (verb == "iota") {
    require_args(inv, 1, 1);
    emit(inv, out, iota(parse_family(args[0])).to_string());
    return 0;
  }
  if (verb == "rank") {
    require_args(inv, 2, 2);
    emit(inv, out, rank(parse_family(args[0]), parse_finset(args[1])).to_string());
    return 0;
  }
  if (verb == "norm") {
    require_args(inv, 2, 64);
    Space sp = parse_space(args[0]);
    if (sp.kind() == SpaceKind::DirectSum) {
      std::vector<SparseVec> parts;
      for (size_t i = 1; i < args.size(); ++i) parts.push_back(parse_sparsevec(args[i]));
      emit(inv, out, rational_to_string(direct_sum_norm(sp, parts, norm_options(inv.opts))));
    } else {
      require_args(inv, 2, 2);
      emit(inv, out,
           rational_to_string(norm(sp, parse_sparsevec(args[1]), norm_options(inv.opts))));
    }
    return 0;
  }
  if (verb == "certify-lower") {
    require_args(inv, 5, 5);
    Space sp = parse_space(args[0]);
    FinSet e = parse_finset(args[1]);
    int m = static_cast<int>(parse_flag_int("m", args[2]));
    int k = static_cast<int>(parse_flag_int("k", args[3]));
    auto coeffs = coeffs_on(e, parse_sparsevec(args[4]));
    bool ok = l1_lower_certificate(sp, e, m, k, coeffs, norm_options(inv.opts));
    emit(inv, out, ok);
    return ok ? 0 : 1;
  }
  if (verb == "witness") {
    require_args(inv, 3, 4);
    Space zeta = parse_space(args[0]);
    Family xi = parse_family(args[1]);
    FinSet e = parse_finset(args[2]);
    std::vector<Rational> coeffs(e.size(), Rational(1));
    if (args.size() == 4) coeffs = coeffs_on(e, parse_sparsevec(args[3]));
    auto w = schreier_sum_witness(zeta, xi, e, coeffs);
    json detail = {{"holds", w.holds},
                   {"direct_sum_value", rational_to_string(w.direct_sum_value)},
                   {"chain_value", rational_to_string(w.chain_value)},
                   {"coeff_sum", rational_to_string(w.coeff_sum)}};
    emit(inv, out, w.holds, detail);
    return w.holds ? 0 : 1;
  }
  if (verb == "search-sum") {
    require_args(inv, 2, 3);
    Family f = parse_family(args[0]);
    Coloring col = parse_coloring(args[1]);
    SumSearchOptions sopts;
    sopts.bound = args.size() == 3 ? static_cast<int>(parse_flag_int("bound", args[2]))
                                   : inv.opts.bound;
    sopts.src_ground = inv.opts.ground;
    if (!col.total_on(f, sopts.src_ground))
      throw CliError(1, "coloring is not total on the family");
    auto w = search_sum_witness(f, col, sopts);
    if (!w) throw Inconclusive("no witness found within bound " + std::to_string(sopts.bound));
    json jw = {{"kind", "sum-witness"},
               {"family", f.to_string()},
               {"coloring", col.to_string()},
               {"xi0", w->xi0.to_string()},
               {"xi1", w->xi1.to_string()},
               {"emb0", embedding_to_json(w->emb0)},
               {"emb1", embedding_to_json(w->emb1)}};
    maybe_write_file(inv.opts, jw, err);
    emit(inv, out, w->xi0.to_string() + " (+) " + w->xi1.to_string(), jw);
    return 0;
  }
  if (verb == "verify-sum") {
    require_args(inv, 1, 1);
    json j = load_witness_file(args[0]);
    if (j.value("kind", "") != "sum-witness") throw CliError(2, "not a sum-witness file");
    Family f = parse_family(j.at("family").get<std::string>());
    Coloring col = parse_coloring(j.at("coloring").get<std::string>());
    Ordinal xi0 = parse_ordinal(j.at("xi0").get<std::string>());
    Ordinal xi1 = parse_ordinal(j.at("xi1").get<std::string>());
    if (!(hessenberg(xi0, xi1) == iota(f))) {
      emit(inv, out, false, json("xi0 (+) xi1 differs from iota"));
      return 1;
    }
    for (int side = 0; side <= 1; ++side) {
      const Ordinal& xi = side == 0 ? xi0 : xi1;
      if (xi.is_zero()) continue;
      auto emb = embedding_from_json(j.at(side == 0 ? "emb0" : "emb1"));
      auto r = verify_monochromatic(Family::fine_schreier(xi), f, emb, col, side);
      if (!r) {
        emit(inv, out, false, json(r.violation));
        return 1;
      }
    }
    emit(inv, out, true);
    return 0;
  }
  if (verb == "verify-prod") {
    require_args(inv, 1, 1);
    json j = load_witness_file(args[0]);
    if (j.value("kind", "") != "prod-witness") throw CliError(2, "not a prod-witness file");
    Family f = parse_family(j.at("f").get<std::string>());
    Family g = parse_family(j.at("g").get<std::string>());
    ChainPred pred = parse_chain_pred(j.at("pred").get<std::string>());
    ChainMap jmap;
    jmap.src_ground = j.at("ground").get<int>();
    for (const auto& row : j.at("j")) {
      Chain c;
      for (const auto& s : row.at(1)) c.push_back(parse_finset(s.get<std::string>()));
      jmap.table[parse_finset(row.at(0).get<std::string>())] = std::move(c);
    }
    auto r = verify_product_witness(f, g, pred, jmap);
    if (r.ok) {
      emit(inv, out, true);
    } else {
      emit(inv, out, false, json(r.violation));
    }
    return r.ok ? 0 : 1;
  }
  if (verb == "prune") {
    require_args(inv, 2, 2);
    Family f = parse_family(args[0]);
    Selector sel = parse_selector(args[1]);
    auto [map, report] = prune(f, sel, inv.opts.depth, inv.opts.breadth);
    json samples = json::array();
    for (const auto& [e, img] : report.samples) samples.push_back({e.to_string(), img.to_string()});
    json jw = {{"kind", "prune-report"},
               {"family", f.to_string()},
               {"selector", sel.to_string()},
               {"depth", inv.opts.depth},
               {"breadth", inv.opts.breadth},
               {"ok", report.ok},
               {"violation", report.violation},
               {"samples", samples}};
    maybe_write_file(inv.opts, jw, err);
    emit(inv, out, report.ok, jw);
    return report.ok ? 0 : 1;
  }
  if (verb == "oracle-check") {
    require_args(inv, 0, 0);
    std::vector<Family> corpus;
    for (int n = 0; n <= 4; ++n) corpus.push_back(Family::card(n));
    for (int m = 1; m <= 3; ++m) {
      corpus.push_back(Family::sum(Family::card(m), Family::card(m)));
      corpus.push_back(Family::prod(Family::card(m), Family::card(2)));
    }
    corpus.push_back(Family::schreier_base());
    long compared = 0;
    for (const auto& f : corpus) {
      for (const auto& e : f.enumerate(inv.opts.ground + 4)) {
        Ordinal r = rank(f, e);
        if (!r.is_finite()) continue;
        auto o = rank_oracle(f, e, inv.opts.cap);
        if (!o || !(Ordinal::finite(*o) == r)) {
          emit(inv, out, false,
               json("rank oracle mismatch on " + f.to_string() + " at " + e.to_string()));
          return 1;
        }
        ++compared;
      }
    }
    emit(inv, out, true, json({{"compared", compared}}));
    return 0;
  }
  if (verb == "selftest") {
    require_args(inv, 0, 0);
    bool ok = run_selftest(out);
    return ok ? 0 : 1;
  }
  throw CliError(2, "unknown verb '" + verb + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Invocation inv = parse_invocation(args);
    return dispatch(inv, out, err);
  } catch (const ParseError& ex) {
    err << ex.what() << '\n';
    return 2;
  } catch (const CliError& ex) {
    err << ex.what() << '\n';
    return ex.status;
  } catch (const Inconclusive& ex) {
    err << ex.what() << '\n';
    return 3;
  } catch (const std::domain_error& ex) {
    err << ex.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& ex) {
    err << ex.what() << '\n';
    return 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace schreier
