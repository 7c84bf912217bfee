#include "divlat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "divlat/lattice.hpp"
#include "divlat/reduction.hpp"
#include "divlat/sequences.hpp"
#include "divlat/version.hpp"

namespace divlat::cli {

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << csv_quote(cells[i]);
  }
  os << "\r\n";
}

std::string sci(double v) {
  std::ostringstream o;
  o << std::scientific << std::setprecision(6) << v;
  return o.str();
}

template <class Fn>
int emit(const std::string& path, std::ostream& fallback, std::ostream& err, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot open " << path << "\n";
    return 1;
  }
  fn(f);
  f.close();
  if (!f) {
    err << "error: write failed: " << path << "\n";
    return 1;
  }
  return 0;
}

const std::vector<std::string> kScanColumns = {
    "family", "m", "r", "n", "s", "t", "group_order", "dimQ", "d", "bound",
    "ratio", "is_cyclotomic"};

std::vector<std::string> scan_row(const amitsur::BoundRecord& rec) {
  std::vector<std::string> row;
  row.push_back(std::string(amitsur::family_name(rec.family)));
  if (rec.params) {
    row.push_back(rec.params->m.get_str());
    row.push_back(rec.params->r.get_str());
    row.push_back(rec.params->n.get_str());
    row.push_back(rec.params->s.get_str());
    row.push_back(rec.params->t.get_str());
  } else {
    for (int i = 0; i < 5; ++i) row.emplace_back();
  }
  row.push_back(rec.group_order.get_str());
  row.push_back(rec.dimQ.get_str());
  row.push_back(rec.packing_dim.get_str());
  row.push_back(rec.bound.get_str());
  row.push_back(rec.ratio.get_str());
  bool cyclotomic = rec.family == amitsur::Family::Gmr && rec.params &&
                    rec.params->r == 1;
  row.push_back(cyclotomic ? "true" : "false");
  return row;
}

void write_scan(std::ostream& os, const seq::ScanResult& res, const std::string& format) {
  if (format == "csv") {
    write_csv_row(os, kScanColumns);
    for (const auto& rec : res.points) write_csv_row(os, scan_row(rec));
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& rec : res.points) {
    auto cells = scan_row(rec);
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < kScanColumns.size(); ++i) obj[kScanColumns[i]] = cells[i];
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << "\n";
}

const std::vector<std::string> kSeqColumns = {"index", "m", "r", "d", "bound", "ratio"};

std::vector<std::string> seq_row(const seq::SequencePoint& pt) {
  return {pt.index.get_str(), pt.m.get_str(),     pt.r.get_str(),
          pt.packing_dim.get_str(), pt.bound.get_str(), pt.ratio.get_str()};
}

int do_reduce_demo(const std::string& spec, unsigned k, std::uint64_t seed,
                   std::ostream& os) {
  auto alg = red::parse_algebra_spec(spec);
  if (k < 1 || k > 6) throw std::invalid_argument("k must be between 1 and 6");
  red::Rng rng(seed);

  auto a = red::random_spd_amat(alg, k, rng);
  auto ch = red::block_cholesky(alg, a);
  auto recon = red::amat_mul(red::involute(ch.t), red::amat_mul(ch.d, ch.t));
  double chol_resid = red::amat_norm(red::amat_sub(a, recon)) / red::amat_norm(a);

  // Draw until the determinant normalization lands at +1 (an odd real block
  // can give a negative determinant).
  unsigned rep_dim = k * k * red::real_dim(alg);
  red::AMat g;
  double nrm = 0;
  unsigned attempts = 0;
  do {
    if (++attempts > 200) throw std::domain_error("could not normalize a random matrix");
    g = red::random_amat(alg, k, rng);
    nrm = red::norm_MkA(alg, g);
    if (std::abs(nrm) < 1e-12) continue;
    g = red::amat_scale(std::pow(std::abs(nrm), -1.0 / rep_dim), g);
    nrm = red::norm_MkA(alg, g);
  } while (std::abs(nrm - 1.0) > 1e-6);

  auto kan = red::kan_decompose(alg, g);
  auto eye = red::amat_identity(alg, k);
  double ortho =
      red::amat_norm(red::amat_sub(red::amat_mul(red::involute(kan.kappa), kan.kappa), eye));
  auto back = red::amat_mul(kan.kappa, red::amat_mul(kan.a, kan.n));
  double kan_resid = red::amat_norm(red::amat_sub(back, g)) / red::amat_norm(g);

  os << "algebra=" << spec << "\n";
  os << "k=" << k << "\n";
  os << "seed=" << seed << "\n";
  os << "cholesky_residual=" << sci(chol_resid) << "\n";
  os << "kappa_orthogonality=" << sci(ortho) << "\n";
  os << "kan_reconstruction=" << sci(kan_resid) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lattice packing bounds from finite groups in division algebras",
               "divlat"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  unsigned long scan_max_m = 0, scan_max_dim = 1000000000;
  unsigned scan_threads = 1;
  std::string scan_out, scan_format = "csv";
  auto* sc_scan = app.add_subcommand("scan", "enumerate bound records up to a modulus");
  sc_scan->add_option("--max-m", scan_max_m, "largest modulus m")->required();
  sc_scan->add_option("--max-dim", scan_max_dim, "keep records with d at most this");
  sc_scan->add_option("--out", scan_out, "output file (default stdout)");
  sc_scan->add_option("--format", scan_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sc_scan->add_option("--threads", scan_threads, "worker threads");

  auto* sc_seq = app.add_subcommand("sequence", "named record sequences");
  sc_seq->require_subcommand(1);
  unsigned long improv_x = 0;
  std::string improv_out;
  auto* sq_improv = sc_seq->add_subcommand("improv", "tetrahedral product records");
  sq_improv->add_option("--x", improv_x, "prime threshold")->required();
  sq_improv->add_option("--out", improv_out, "output file (default stdout)");
  unsigned even_count = 0;
  std::string even_out;
  auto* sq_even = sc_seq->add_subcommand("even", "first-primes product records");
  sq_even->add_option("--count", even_count, "number of rows")->required();
  sq_even->add_option("--out", even_out, "output file (default stdout)");
  unsigned prim_max = 0;
  std::string prim_out;
  auto* sq_prim = sc_seq->add_subcommand("primorial", "primorial prime records");
  sq_prim->add_option("--max-n", prim_max, "largest prime count")->required();
  sq_prim->add_option("--out", prim_out, "output file (default stdout)");

  std::uint64_t hasse_limit = 0;
  std::string hasse_out;
  auto* sc_hasse = app.add_subcommand("hasse", "order-of-two parity density");
  sc_hasse->add_option("--limit", hasse_limit, "prime bound")->required();
  sc_hasse->add_option("--out", hasse_out, "output file (default stdout)");

  unsigned cross_max = 0;
  auto* sc_cross = app.add_subcommand("crossover", "family comparison dimension");
  sc_cross->add_option("--max-log10", cross_max, "search cap exponent")->required();

  unsigned long cons_m = 0, cons_r = 0;
  std::string cons_out;
  auto* sc_cons = app.add_subcommand("construct", "build a group-invariant lattice");
  sc_cons->add_option("--m", cons_m, "modulus")->required();
  sc_cons->add_option("--r", cons_r, "twist")->required();
  sc_cons->add_option("--out", cons_out, "output file (default stdout)");

  std::string svp_in;
  unsigned svp_guard = lat::kDefaultDimensionGuard;
  auto* sc_svp = app.add_subcommand("svp", "shortest vector of a stored lattice");
  sc_svp->add_option("--in", svp_in, "lattice document")->required();
  sc_svp->add_option("--guard", svp_guard, "dimension guard");

  std::string count_in, count_radius;
  unsigned count_guard = lat::kDefaultDimensionGuard;
  auto* sc_count = app.add_subcommand("count", "ball point count of a stored lattice");
  sc_count->add_option("--in", count_in, "lattice document")->required();
  sc_count->add_option("--radius-sq", count_radius, "squared radius, rational p/q")
      ->required();
  sc_count->add_option("--guard", count_guard, "dimension guard");

  std::string demo_alg;
  unsigned demo_k = 2;
  std::uint64_t demo_seed = 1;
  auto* sc_demo = app.add_subcommand("reduce-demo", "matrix decomposition residuals");
  sc_demo->add_option("--algebra", demo_alg, "blocks, e.g. H1,R2")->required();
  sc_demo->add_option("--k", demo_k, "matrix size");
  sc_demo->add_option("--seed", demo_seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sc_scan->parsed()) {
      auto res = seq::scan(Int(scan_max_m), Int(scan_max_dim), scan_threads);
      return emit(scan_out, out, err,
                  [&](std::ostream& os) { write_scan(os, res, scan_format); });
    }
    if (sq_improv->parsed()) {
      auto pt = seq::improv_sequence(Int(improv_x));
      return emit(improv_out, out, err, [&](std::ostream& os) {
        write_csv_row(os, kSeqColumns);
        write_csv_row(os, seq_row(pt));
      });
    }
    if (sq_even->parsed()) {
      if (even_count < 1) throw std::invalid_argument("--count must be >= 1");
      return emit(even_out, out, err, [&](std::ostream& os) {
        write_csv_row(os, kSeqColumns);
        for (unsigned n = 1; n <= even_count; ++n)
          write_csv_row(os, seq_row(seq::even_sequence(n)));
      });
    }
    if (sq_prim->parsed()) {
      if (prim_max < 1) throw std::invalid_argument("--max-n must be >= 1");
      return emit(prim_out, out, err, [&](std::ostream& os) {
        write_csv_row(os, kSeqColumns);
        for (unsigned n = 1; n <= prim_max; ++n)
          if (auto pt = seq::primorial_prime_family(n)) write_csv_row(os, seq_row(*pt));
      });
    }
    if (sc_hasse->parsed()) {
      auto h = seq::hasse_ratio(hasse_limit);
      return emit(hasse_out, out, err, [&](std::ostream& os) {
        write_csv_row(os, {"limit", "odd_primes", "even_order", "odd_order", "ratio",
                           "ratio_decimal"});
        Int odd_order = h.count_all_odd_primes - h.count_even_order;
        std::ostringstream dec;
        dec << std::fixed << std::setprecision(6) << h.ratio_odd_order.get_d();
        write_csv_row(os, {std::to_string(hasse_limit),
                           h.count_all_odd_primes.get_str(),
                           h.count_even_order.get_str(), odd_order.get_str(),
                           h.ratio_odd_order.get_str(), dec.str()});
      });
    }
    if (sc_cross->parsed()) {
      out << "method=" << seq::crossover_method() << "\n";
      auto dim = seq::crossover(cross_max);
      out << "crossover_dim=" << (dim ? dim->get_str() : "none") << "\n";
      return 0;
    }
    if (sc_cons->parsed()) {
      auto inst = lat::averaged_gram(static_cast<unsigned>(cons_m),
                                     static_cast<unsigned>(cons_r));
      return emit(cons_out, out, err,
                  [&](std::ostream& os) { lat::write_json(inst, os); });
    }
    if (sc_svp->parsed()) {
      std::ifstream f(svp_in, std::ios::binary);
      if (!f) {
        err << "error: cannot open " << svp_in << "\n";
        return 1;
      }
      auto inst = lat::read_json(f);
      auto res = lat::shortest_vector(inst.gram, svp_guard);
      out << "dim=" << inst.gram.dim() << "\n";
      out << "lambda1=" << res.min_value.get_str() << "\n";
      out << "coeffs=";
      for (std::size_t i = 0; i < res.coeffs.size(); ++i) {
        if (i) out << ' ';
        out << res.coeffs[i].get_str();
      }
      out << "\n";
      return 0;
    }
    if (sc_count->parsed()) {
      std::ifstream f(count_in, std::ios::binary);
      if (!f) {
        err << "error: cannot open " << count_in << "\n";
        return 1;
      }
      auto inst = lat::read_json(f);
      Rat radius;
      try {
        radius = Rat(count_radius);
      } catch (...) {
        throw std::invalid_argument("--radius-sq must be a rational p/q");
      }
      if (radius.get_den() == 0)
        throw std::invalid_argument("--radius-sq denominator is zero");
      radius.canonicalize();
      out << "count=" << lat::count_points(inst, radius, count_guard).get_str() << "\n";
      return 0;
    }
    if (sc_demo->parsed()) return do_reduce_demo(demo_alg, demo_k, demo_seed, out);
  } catch (const lat::DimensionGuardError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace divlat::cli
