// subdyn: command-line driver for the substitution-dynamics library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subdyn/subdyn.hpp"

using namespace subdyn;
using io::json;

namespace {

constexpr int exit_validation = 2;
constexpr int exit_computation = 3;

struct Options {
  std::string rule = "fibonacci";
  std::string block_rule = "block2d";
  std::string out;
  std::string seed;
  std::string alpha = "frac(sqrt2)";
  std::string m = "constant:1";
  std::string phi;
  int level = 5;
  int depth = 20;
  int grid = 100;
  int zmax = 8;
  std::size_t window = 0;
  std::size_t half_width = 100;
  std::size_t truncation = 20;
  std::size_t sites = 1024;
  std::size_t ids = 0;
  double gaps = 0.0;
  bool report = false;
  bool json_out = false;
  bool svg = false;
  std::vector<double> k;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::format:
    case ErrorKind::parameter:
    case ErrorKind::precondition:
    case ErrorKind::domain: return exit_validation;
    case ErrorKind::resource:
    case ErrorKind::convergence: return exit_computation;
  }
  return exit_computation;
}

int report_error(const std::string& kind, const std::string& message, int code) {
  json e;
  e["error"] = kind;
  e["message"] = message;
  e["exit_code"] = code;
  std::cerr << e.dump() << '\n';
  return code;
}

/// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw FormatError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

io::RuleSource load_rule(const Options& o) {
  const auto& r = o.rule;
  if (r == "fibonacci") return {r, builtin::fibonacci(), {}, {}, {}};
  if (r == "thue-morse") return {r, builtin::thue_morse(), {}, {}, {}};
  if (r == "sqrt13") return {r, builtin::sqrt13(), {}, {}, {}};
  if (r == "rho-infty")
    return {r, builtin::rho_infty(o.truncation), {}, MSequence::constant(1), {}};
  if (r == "rho-alpha") {
    auto p = builtin::parse_torus_parameter(o.alpha);
    return {r, builtin::rho_alpha(p), {}, {}, p};
  }
  if (r == "block2d") return {r, {}, builtin::block2d(), {}, {}};
  if (r == "glb-placeholder")
    throw ParameterError("glb-placeholder has no published rule table and is not available");
  return io::rule_from_file(r);
}

const Substitution& need_rho(const io::RuleSource& src) {
  if (!src.rho) throw ParameterError("rule '" + src.name + "' is a planar block rule; use the blocks subcommand");
  return *src.rho;
}

Word seed_word(const Substitution& rho, const std::string& text) {
  if (!text.empty()) return rho.alphabet().word(text);
  const auto& a = rho.alphabet();
  if (a.is_finite()) return Word{FiniteLabel{0}};
  if (a.is_compact()) return Word{CompactNat::at(0)};
  return Word{TorusPoint::zero(a.basis().dim())};
}

struct Geometry {
  LengthFunction length;
  double lambda = 1.0;
};

/// Natural tile lengths: PF lengths for finite rules, the closed form for
/// rho_m, unit lengths for the constant-length torus rules.
Geometry geometry_of(const io::RuleSource& src) {
  const auto& rho = need_rho(src);
  if (src.m) {
    auto s = solve_mu(*src.m);
    auto m = *src.m;
    return {[m, mu = s.mu](const Letter& l) {
              const auto& c = std::get<CompactNat>(l);
              if (c.top) throw DomainError("top letter has no finite length");
              return length_function(m, mu, c.value);
            },
            s.lambda};
  }
  if (rho.alphabet().is_finite()) {
    auto m = substitution_matrix(rho);
    auto pf = perron_data(m.counts);
    return {length_from(m, pf), pf.lambda};
  }
  return {[](const Letter&) { return 1.0; }, 2.0};
}

std::string num(double x) { return io::format_double(x); }

std::string fixed(double x, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void validate_positive(long long v, const char* what) {
  if (v <= 0) throw ParameterError(std::string(what) + " must be positive");
}

int run_iterate(const Options& o) {
  if (o.level < 0) throw ParameterError("--n must be nonnegative");
  auto src = load_rule(o);
  const auto& rho = need_rho(src);
  Word w = iterate(rho, seed_word(rho, o.seed), o.level);
  Sink sink(o.out);
  sink.os() << rho.alphabet().format(w) << '\n';
  return 0;
}

int run_matrix(const Options& o) {
  auto src = load_rule(o);
  const auto& rho = need_rho(src);
  auto m = substitution_matrix(rho);
  json j = io::to_json(m, rho.alphabet());
  auto prim = is_primitive(m.counts);
  j["primitive"] = prim.primitive;
  if (prim.power) j["primitive_power"] = *prim.power;
  Sink sink(o.out);
  sink.os() << j.dump(2) << '\n';
  return 0;
}

int run_perron(const Options& o) {
  auto src = load_rule(o);
  const auto& rho = need_rho(src);
  auto m = substitution_matrix(rho);
  auto pf = perron_data(m.counts);
  Sink sink(o.out);
  if (o.json_out) {
    json j = io::to_json(pf);
    json letters = json::array();
    for (const auto& l : m.letters) letters.push_back(rho.alphabet().format(l));
    j["letters"] = letters;
    j["density"] = tile_density(pf.frequency, pf.length);
    sink.os() << j.dump(2) << '\n';
    return 0;
  }
  auto& os = sink.os();
  os << "lambda          " << fixed(pf.lambda, 12) << '\n';
  os << "|lambda_2|      " << fixed(pf.second_modulus, 12) << '\n';
  os << "PV              " << to_string(pf.pv) << '\n';
  os << "density         " << fixed(tile_density(pf.frequency, pf.length), 12) << '\n';
  os << "letter  length          frequency\n";
  for (std::size_t i = 0; i < m.letters.size(); ++i) {
    std::string name = rho.alphabet().format(m.letters[i]);
    name.resize(std::max<std::size_t>(name.size(), 8), ' ');
    os << name << fixed(pf.length[static_cast<Eigen::Index>(i)], 12) << "  "
       << fixed(pf.frequency[static_cast<Eigen::Index>(i)], 12) << '\n';
  }
  return 0;
}

int run_compact(const Options& o) {
  auto m = MSequence::parse(o.m);
  auto r = compact_report(m, o.truncation);
  Sink sink(o.out);
  if (o.report) {
    io::CsvWriter csv(sink.os());
    csv.row({"n", "L", "nu"});
    for (std::size_t n = 0; n <= o.truncation; ++n)
      csv.row({std::to_string(n), num(r.lengths[n]), num(r.frequencies[n])});
    csv.row({"mu", num(r.solution.mu), ""});
    csv.row({"lambda", num(r.solution.lambda), ""});
    csv.row({"truncated_mass", num(r.truncated_mass), ""});
    return 0;
  }
  json j;
  j["m"] = o.m;
  j["mu"] = r.solution.mu;
  j["lambda"] = r.solution.lambda;
  j["series_truncation"] = r.solution.truncation;
  j["tail_bound"] = r.solution.tail_bound;
  j["L"] = r.lengths;
  j["nu"] = r.frequencies;
  j["truncated_mass"] = r.truncated_mass;
  sink.os() << j.dump(2) << '\n';
  return 0;
}

int run_tiling(const Options& o) {
  if (o.level < 0) throw ParameterError("--n must be nonnegative");
  auto src = load_rule(o);
  const auto& rho = need_rho(src);
  auto g = geometry_of(src);
  auto t = inflate_tiling(rho, g.length, g.lambda, seed_word(rho, o.seed), o.level);
  Sink sink(o.out);
  if (o.svg) {
    svg::write_tiling(sink.os(), t, rho.alphabet());
    return 0;
  }
  io::CsvWriter csv(sink.os());
  csv.row({"index", "type", "left", "length"});
  for (std::size_t i = 0; i < t.tiles.size(); ++i)
    csv.row({std::to_string(i), rho.alphabet().format(t.tiles[i].type), num(t.tiles[i].left),
             num(t.tiles[i].length)});
  return 0;
}

int run_blocks(const Options& o) {
  if (o.level < 0) throw ParameterError("--n must be nonnegative");
  Options b = o;
  b.rule = o.block_rule;
  auto src = load_rule(b);
  if (!src.block) throw ParameterError("blocks needs a planar block rule");
  const auto& rule = *src.block;
  auto theta = TorusPoint::zero(rule.basis->dim());
  Sink sink(o.out);
  if (o.report) {
    auto rep = eta_block_2d(rule, theta, o.level);
    json j;
    j["level"] = rep.n;
    j["cells"] = rep.level.cells;
    j["eta_origin"] = {rep.level.origin.real(), rep.level.origin.imag()};
    j["eta_e1"] = {rep.level.e1.real(), rep.level.e1.imag()};
    j["eta_e2"] = {rep.level.e2.real(), rep.level.e2.imag()};
    j["abs_eta_e1"] = std::abs(rep.level.e1);
    j["abs_eta_e2"] = std::abs(rep.level.e2);
    j["cauchy_gap"] = rep.cauchy_gap;
    j["converged"] = rep.converged;
    sink.os() << j.dump(2) << '\n';
    return 0;
  }
  auto a = block_supertile(rule, theta, o.level);
  if (o.svg) {
    svg::write_block(sink.os(), a);
    return 0;
  }
  io::CsvWriter csv(sink.os());
  csv.row({"row", "col", "label", "theta"});
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      csv.row({std::to_string(r), std::to_string(c), a.at(r, c).str(), num(a.value(r, c))});
  return 0;
}

int run_autocorr(const Options& o) {
  validate_positive(o.zmax, "--zmax");
  auto p = builtin::parse_torus_parameter(o.alpha);
  AutocorrelationTable t;
  if (o.window > 0) {
    if (o.window <= static_cast<std::size_t>(o.zmax)) throw ParameterError("--window must exceed --zmax");
    auto rho = builtin::rho_alpha(p);
    int n = 0;
    while ((std::size_t{1} << n) < o.window) ++n;
    Word w = iterate(rho, Word{TorusPoint::zero(p.basis->dim())}, n);
    w.resize(o.window);
    t = empirical_autocorrelation(w, torus_weight(p.basis), o.zmax);
  } else {
    t = eta_recursive(p.value(), o.zmax);
  }
  Sink sink(o.out);
  io::CsvWriter csv(sink.os());
  csv.row({"z", "re_eta", "im_eta"});
  for (int z = -o.zmax; z <= o.zmax; ++z) csv.row({std::to_string(z), num(t.at(z).real()), num(t.at(z).imag())});
  return 0;
}

int run_riesz(const Options& o) {
  auto p = builtin::parse_torus_parameter(o.alpha);
  auto t = riesz_distribution(p.value(), o.depth, o.grid);
  Sink sink(o.out);
  io::CsvWriter csv(sink.os());
  csv.row({"x", "F"});
  for (std::size_t i = 0; i < t.x.size(); ++i) csv.row({num(t.x[i]), num(t.values[i])});
  return 0;
}

PotentialMap parse_phi(const std::string& text, const Alphabet& alphabet) {
  if (text.empty()) throw ParameterError("--phi is required, e.g. a=1,b=0");
  auto table = std::make_shared<std::map<std::string, double>>();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw FormatError("--phi entry '" + item + "' needs letter=value");
    (*table)[item.substr(0, eq)] = parse_real(item.substr(eq + 1));
  }
  return [table, alphabet](const Letter& l) {
    auto it = table->find(alphabet.format(l));
    if (it == table->end()) throw DomainError("--phi has no value for letter " + alphabet.format(l));
    return it->second;
  };
}

int run_schrodinger(const Options& o) {
  validate_positive(static_cast<long long>(o.sites), "--n");
  if (o.gaps < 0.0) throw ParameterError("--gaps resolution must be positive");
  auto src = load_rule(o);
  const auto& rho = need_rho(src);
  auto phi = parse_phi(o.phi, rho.alphabet());
  Word w = seed_word(rho, o.seed);
  for (int k = 0; w.size() < o.sites; ++k) {
    if (k > 200) throw ResourceError("rule does not grow the seed to --n letters");
    w = subdyn::apply(rho, w);
  }
  SpectrumSample s(TridiagonalOperator(potential(w, phi, 0, o.sites)));
  Sink sink(o.out);
  io::CsvWriter csv(sink.os());
  csv.row({"kind", "a", "b"});
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    csv.row({"eigenvalue", std::to_string(i), num(s.eigenvalues[i])});
  if (o.ids > 0) {
    const double lo = s.eigenvalues.front(), hi = s.eigenvalues.back();
    for (std::size_t i = 0; i <= o.ids; ++i) {
      double e = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(o.ids);
      csv.row({"ids", num(e), num(s.ids(e))});
    }
  }
  if (o.gaps > 0.0) {
    auto g = gap_report(s, o.gaps);
    for (const auto& gap : g.gaps) csv.row({"gap", num(gap.left), num(gap.right)});
    csv.row({"band_measure", num(g.band_measure), GapReport::label});
  }
  return 0;
}

int run_modlattice(const Options& o) {
  validate_positive(static_cast<long long>(o.half_width), "--window");
  if (o.k.size() % 2 != 0) throw ParameterError("--k takes pairs kx,ky");
  const auto h = static_cast<std::int64_t>(o.half_width);
  auto ps = modulated_lattice(Modulation{}, {-h, h, -h, h});
  std::vector<Point2> ks;
  if (o.k.empty()) {
    const double s3 = *named_constant("sqrt3"), s5 = *named_constant("sqrt5");
    ks = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, -1}, {s3 / 4, s5 / 7}};
  } else {
    for (std::size_t i = 0; i < o.k.size(); i += 2) ks.push_back({o.k[i], o.k[i + 1]});
  }
  auto intensity = empirical_diffraction(ps, ks);
  Sink sink(o.out);
  io::CsvWriter csv(sink.os());
  csv.row({"kx", "ky", "I"});
  for (std::size_t i = 0; i < ks.size(); ++i) csv.row({num(ks[i][0]), num(ks[i][1]), num(intensity[i])});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Substitution dynamics: iteration, inflation data, tilings, diffraction and Schrodinger spectra."};
  app.require_subcommand(1, 1);
  Options o;

  auto add_rule = [&](CLI::App* s) {
    s->add_option("--rule", o.rule,
                  "builtin (fibonacci, thue-morse, sqrt13, rho-infty, rho-alpha, block2d) or JSON rule file")
        ->capture_default_str();
  };
  auto add_out = [&](CLI::App* s) { s->add_option("--out,-o", o.out, "output file (default stdout)"); };

  auto* it = app.add_subcommand("iterate", "Print rho^n(seed).");
  add_rule(it);
  add_out(it);
  it->add_option("--n", o.level, "number of iterations")->capture_default_str();
  it->add_option("--seed", o.seed, "seed word (default: first letter)");
  it->add_option("--alpha", o.alpha, "shift for rho-alpha")->capture_default_str();
  it->add_option("--truncation", o.truncation, "truncation for rho-infty")->capture_default_str();
  it->footer("Example: iterate --rule sqrt13 --n 3 prints rho^3(a), which contains the fourth power aaaa.");

  auto* mx = app.add_subcommand("matrix", "Substitution matrix and primitivity as JSON.");
  add_rule(mx);
  add_out(mx);
  mx->add_option("--truncation", o.truncation, "truncation for rho-infty")->capture_default_str();
  mx->footer("Example: matrix --rule sqrt13 gives [[1,1],[3,0]].");

  auto* pf = app.add_subcommand("perron", "Perron-Frobenius data: lambda, L, R, PV flag.");
  add_rule(pf);
  add_out(pf);
  pf->add_flag("--json", o.json_out, "emit JSON instead of the table");
  pf->add_option("--truncation", o.truncation, "truncation for rho-infty")->capture_default_str();
  pf->footer("Example: perron --rule sqrt13 reproduces lambda = (1+sqrt13)/2 ~ 2.302776, non-PV.");

  auto* cf = app.add_subcommand("compact", "Closed-form data of the compact family rho_m.");
  cf->alias("compact-family");
  add_out(cf);
  cf->add_option("--m", o.m, "constant:c, periodic:a,b,..., eventually:p..;q.., thue-morse:lo,hi")
      ->capture_default_str();
  cf->add_option("--truncation", o.truncation, "report L(n), nu(n) for n <= N")->capture_default_str();
  cf->add_flag("--report", o.report, "CSV table of n, L(n), nu(n)");
  cf->footer("Example: compact --m constant:1 reproduces mu = 1/2, lambda = 5/2, nu(0) = 1/2.");

  auto* tl = app.add_subcommand("tiling", "Self-similar tiling of rho^n(seed).");
  add_rule(tl);
  add_out(tl);
  tl->add_option("--n", o.level, "inflation level")->capture_default_str();
  tl->add_option("--seed", o.seed, "seed word");
  tl->add_option("--alpha", o.alpha, "shift for rho-alpha")->capture_default_str();
  tl->add_option("--truncation", o.truncation, "truncation for rho-infty")->capture_default_str();
  tl->add_flag("--svg", o.svg, "SVG drawing instead of CSV");
  tl->footer("Example: tiling --rule sqrt13 --n 4 --svg draws the non-PV tiling with lengths (lambda, 1).");

  auto* bl = app.add_subcommand("blocks", "Planar block supertiles of the 3x3 rule.");
  bl->add_option("--rule", o.block_rule, "block2d or a JSON block rule file")->capture_default_str();
  add_out(bl);
  bl->add_option("--n", o.level, "supertile level")->capture_default_str();
  bl->add_flag("--svg", o.svg, "SVG arrow drawing");
  bl->add_flag("--report", o.report, "eta(e1), eta(e2) with a Cauchy check (level >= 6)");
  bl->footer("Example: blocks --n 2 --svg draws the 9x9 supertile; blocks --n 7 --report gives |eta(e_i)| < 1.");

  auto* ac = app.add_subcommand("autocorr", "Autocorrelation eta(z) of the rho_alpha sequence.");
  add_out(ac);
  ac->add_option("--alpha", o.alpha, "rational or named constant, e.g. 1/2, frac(sqrt2), frac(pi)")
      ->capture_default_str();
  ac->add_option("--zmax", o.zmax, "largest |z|")->capture_default_str();
  ac->add_option("--window", o.window, "average over this many letters instead of the recursion (the average runs in the z -> -z orientation)");
  ac->footer("Example: autocorr --alpha 1/2 --zmax 1 gives eta(1) = -1/3, the Thue-Morse value.");

  auto* rz = app.add_subcommand("riesz", "Distribution function of the depth-N Riesz product.");
  add_out(rz);
  rz->add_option("--alpha", o.alpha, "rational or named constant")->capture_default_str();
  rz->add_option("--depth", o.depth, "number of factors")->capture_default_str();
  rz->add_option("--grid", o.grid, "number of x intervals")->capture_default_str();
  rz->footer("Example: riesz --alpha 0.5 --depth 20 gives the monotone Thue-Morse distribution with F(1) = 1.");

  auto* sc = app.add_subcommand("schrodinger", "Spectrum of a truncated hyperlocal Schrodinger operator.");
  add_rule(sc);
  add_out(sc);
  sc->add_option("--phi", o.phi, "letter potentials, e.g. a=1,b=-1");
  sc->add_option("--n", o.sites, "number of sites")->capture_default_str();
  sc->add_option("--seed", o.seed, "seed word");
  sc->add_option("--ids", o.ids, "number of IDS samples");
  sc->add_option("--gaps", o.gaps, "report gaps wider than this resolution");
  sc->add_option("--alpha", o.alpha, "shift for rho-alpha")->capture_default_str();
  sc->add_option("--truncation", o.truncation, "truncation for rho-infty")->capture_default_str();
  sc->footer("Example: schrodinger --rule fibonacci --phi a=1,b=0 --n 4096 --gaps 0.003 shows the Cantor-like gap structure.");

  auto* ml = app.add_subcommand("modlattice", "Diffraction of the sine-modulated square lattice.");
  add_out(ml);
  ml->add_option("--window", o.half_width, "half-width h of the window [-h,h)^2")->capture_default_str();
  ml->add_option("--k", o.k, "wave vectors as kx ky pairs")->expected(-1);
  ml->footer("Example: modlattice --window 100 shows Bragg peaks at integer k with irrational modulation.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("format", e.what(), exit_validation);
  }

  const std::map<CLI::App*, int (*)(const Options&)> dispatch{
      {it, run_iterate},  {mx, run_matrix},   {pf, run_perron},       {cf, run_compact},
      {tl, run_tiling},   {bl, run_blocks},   {ac, run_autocorr},     {rz, run_riesz},
      {sc, run_schrodinger}, {ml, run_modlattice}};
  try {
    for (auto* s : app.get_subcommands()) return dispatch.at(s)(o);
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    return report_error(to_string(e.kind()), e.what(), code);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), exit_computation);
  }
  return exit_validation;
}
