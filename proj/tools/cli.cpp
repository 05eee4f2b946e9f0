#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include "buchi/exact.hpp"
#include "buchi/nevanlinna.hpp"
#include "buchi/reduction/compiler.hpp"
#include "buchi/reduction/formulas.hpp"
#include "buchi/reduction/syntax.hpp"
#include "buchi/sequences.hpp"
#include "buchi/surfaces.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace buchi::cli {

namespace {

using json = nlohmann::ordered_json;

// Malformed flag values; reported like CLI11's own parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json rat_json(const Rat& q) { return to_string(q); }

json rats_json(const std::vector<Rat>& qs) {
  json out = json::array();
  for (const auto& q : qs) out.push_back(rat_json(q));
  return out;
}

std::string join(const std::vector<Rat>& qs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < qs.size(); ++i) out += (i ? sep : "") + to_string(qs[i]);
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<Rat> rational_list(const std::string& flag, const std::string& text) {
  try {
    return parse_rational_list(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Rat rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Int integer(const std::string& flag, const std::string& text) {
  const Rat q = rational(flag, text);
  if (q.get_den() != 1) throw UsageError(flag + ": expected an integer, got " + text);
  return q.get_num();
}

std::vector<Int> integer_list(const std::string& flag, const std::string& text) {
  std::vector<Int> out;
  for (const auto& q : rational_list(flag, text)) {
    if (q.get_den() != 1) throw UsageError(flag + ": expected integers, got " + to_string(q));
    out.push_back(q.get_num());
  }
  return out;
}

unsigned worker_threads() {
  const char* env = std::getenv("BUCHI_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1U, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) throw UsageError("BUCHI_THREADS must be an integer in [1, 1024]");
  return static_cast<unsigned>(n);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("file not found: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RatFunc ratfunc_of(const std::string& num, const std::string& den) {
  return RatFunc(reduction::parse_upoly(num), reduction::parse_upoly(den));
}

json grid_json(const GridReport& r) {
  return {{"rhos", rats_json(r.rhos)}, {"values", rats_json(r.values)}, {"min", rat_json(r.min)},
          {"max", rat_json(r.max)},    {"spread", rat_json(r.spread)},  {"stable_from", rat_json(r.stable_from)},
          {"tail_points", r.tail_points}, {"pass", r.pass}};
}

void print_grid(std::ostream& out, const GridReport& r, const std::string& label) {
  for (std::size_t i = 0; i < r.rhos.size(); ++i) {
    out << "rho = " << to_string(r.rhos[i]) << ": " << label << " = " << to_string(r.values[i]) << "\n";
  }
  out << "min " << to_string(r.min) << ", max " << to_string(r.max) << ", spread " << to_string(r.spread) << "\n";
  out << "stable from rho = " << to_string(r.stable_from) << " (" << r.tail_points << " grid points)\n";
  out << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
}

json quadratic_json(const MonicQuadratic& f) { return {{"u", rat_json(f.u)}, {"v", rat_json(f.v)}}; }

json point_json(const ProjectivePoint& p) { return rats_json(p.coords()); }

std::string point_text(const ProjectivePoint& p) { return "[" + join(p.coords(), ":") + "]"; }

json membership_json(const std::optional<TrivialLineMembership>& m) {
  if (!m) return nullptr;
  json j = {{"signs", m->signs}};
  j["nu"] = m->nu ? rat_json(*m->nu) : json(nullptr);
  return j;
}

std::string membership_text(const std::optional<TrivialLineMembership>& m) {
  if (!m) return "no";
  std::string signs;
  for (std::size_t i = 0; i < m->signs.size(); ++i) signs += (i ? "," : "") + std::string(m->signs[i] > 0 ? "+" : "-");
  return "yes (signs " + signs + (m->nu ? ", nu = " + to_string(*m->nu) : std::string()) + ")";
}

struct Dispatcher {
  std::ostream& out;
  bool as_json = false;
  std::function<void()> action;

  void emit(const json& j) { out << j.dump() << "\n"; }
};

void add_seq(CLI::App& app, Dispatcher& d) {
  auto* seq = app.add_subcommand("seq", "Büchi sequences over the integers");
  seq->require_subcommand(1);

  auto* search = seq->add_subcommand("search", "All nontrivial sequences with 0 <= x_1, x_2 <= bound");
  auto length = std::make_shared<int>(0);
  auto bound = std::make_shared<std::string>();
  auto kernel = std::make_shared<std::string>("auto");
  search->add_option("--length", *length, "Sequence length M (>= 3)")->required();
  search->add_option("--bound", *bound, "Bound on x_1 and x_2")->required();
  search->add_option("--kernel", *kernel, "Prefilter kernel")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  search->add_flag("--json", d.as_json, "Machine-readable output");
  search->callback([&d, length, bound, kernel] {
    const Int b = integer("--bound", *bound);
    SearchOptions options;
    options.threads = worker_threads();
    if (*kernel == "scalar") options.kernel = simd::Kernel::Scalar;
    if (*kernel == "avx2") options.kernel = simd::Kernel::Avx2;
    d.action = [&d, n = *length, b, options] {
      if (options.kernel && !simd::kernel_available(*options.kernel)) {
        throw DomainError("kernel not available on this CPU: " + std::string(simd::kernel_name(*options.kernel)));
      }
      const auto found = buchi::search(n, b, options);
      if (d.as_json) {
        json list = json::array();
        for (const auto& s : found) {
          json row = json::array();
          for (const auto& x : s.values()) row.push_back(int_json(x));
          list.push_back(row);
        }
        d.emit({{"length", n}, {"bound", int_json(b)}, {"nontrivial", list}});
        return;
      }
      d.out << "nontrivial sequences of length " << n << " with x_1, x_2 <= " << b.get_str() << ": "
            << found.size() << "\n";
      for (const auto& s : found) {
        std::string row;
        for (const auto& x : s.values()) row += (row.empty() ? "" : ",") + x.get_str();
        d.out << row << "\n";
      }
    };
  });

  auto* verify = seq->add_subcommand("verify", "Check whether a tuple is a Büchi sequence");
  auto values = std::make_shared<std::string>();
  verify->add_option("values", *values, "Comma-separated integers, e.g. 6,23,32,39")->required();
  verify->add_flag("--json", d.as_json, "Machine-readable output");
  verify->callback([&d, values] {
    const std::vector<Int> xs = integer_list("values", *values);
    d.action = [&d, xs] {
      const bool ok = is_buchi(xs);
      std::optional<TrivialityWitness> witness;
      if (ok) witness = classify_trivial(BuchiSequence(xs));
      if (d.as_json) {
        json vals = json::array();
        for (const auto& x : xs) vals.push_back(int_json(x));
        json j = {{"values", vals}, {"buchi", ok}};
        j["trivial"] = ok ? json(witness.has_value()) : json(nullptr);
        j["nu"] = witness ? int_json(witness->nu) : json(nullptr);
        d.emit(j);
        return;
      }
      if (!ok) {
        d.out << "buchi: no\n";
      } else if (witness) {
        d.out << "buchi: yes, trivial (nu = " << witness->nu.get_str() << ")\n";
      } else {
        d.out << "buchi: yes, nontrivial\n";
      }
    };
  });
}

void add_surface(CLI::App& app, Dispatcher& d) {
  auto* surface = app.add_subcommand("surface", "Büchi surfaces and the point/quadratic correspondence");
  surface->require_subcommand(1);

  auto* check = surface->add_subcommand("check", "Membership, trivial lines and Jacobian rank at a point");
  auto deltas = std::make_shared<std::string>();
  auto point = std::make_shared<std::string>();
  check->add_option("--deltas", *deltas, "δ_2,...,δ_n")->required();
  check->add_option("--point", *point, "x_0,...,x_n")->required();
  check->add_flag("--json", d.as_json, "Machine-readable output");
  check->callback([&d, deltas, point] {
    auto ds = rational_list("--deltas", *deltas);
    auto xs = rational_list("--point", *point);
    d.action = [&d, ds, xs] {
      const BuchiSurface s(ds);
      const ProjectivePoint p(xs);
      const bool on = contains(s, p);
      std::optional<TrivialLineMembership> line;
      std::optional<std::size_t> rank;
      if (on) {
        line = trivial_line_member(s, p);
        rank = jacobian_rank(s, p);
      }
      if (d.as_json) {
        json j = {{"deltas", rats_json(ds)}, {"point", point_json(p)}, {"on_surface", on}};
        j["trivial_line"] = membership_json(line);
        j["jacobian_rank"] = rank ? json(*rank) : json(nullptr);
        d.emit(j);
        return;
      }
      d.out << "point " << point_text(p) << " on X_" << s.n() << ": " << yes_no(on) << "\n";
      if (!on) return;
      d.out << "trivial line: " << membership_text(line) << "\n";
      d.out << "jacobian rank: " << *rank << " (n - 2 = " << s.n() - 2 << ")\n";
    };
  });

  auto* scan = surface->add_subcommand("scan", "Candidate non-square quadratics with square values at the nodes");
  auto nodes = std::make_shared<std::string>();
  auto height = std::make_shared<unsigned long>(0);
  auto integers_only = std::make_shared<bool>(false);
  scan->add_option("--nodes", *nodes, "a_1,...,a_n")->required();
  scan->add_option("--height", *height, "Height bound H on u and v")->required();
  scan->add_flag("--integers-only", *integers_only, "Only integer u and v");
  scan->add_flag("--json", d.as_json, "Machine-readable output");
  scan->callback([&d, nodes, height, integers_only] {
    auto as = rational_list("--nodes", *nodes);
    d.action = [&d, as, h = *height, io = *integers_only] {
      const EvaluationNodes en(as);
      const ScanReport r = scan_exceptional(en, h, ScanOptions{io, worker_threads()});
      if (d.as_json) {
        json cands = json::array();
        for (const auto& f : r.candidates) cands.push_back(quadratic_json(f));
        d.emit({{"nodes", rats_json(as)},
                {"height", h},
                {"integers_only", io},
                {"candidates", cands},
                {"growth", r.growth},
                {"examined", r.examined}});
        return;
      }
      d.out << "candidates (non-square x^2 + ux + v, height <= " << h << ", square at every node): "
            << r.candidates.size() << "\n";
      for (const auto& f : r.candidates) d.out << "  " << f.str() << "\n";
      d.out << "growth by height:";
      for (auto g : r.growth) d.out << " " << g;
      d.out << "\nexamined: " << r.examined << "\n";
    };
  });

  auto* family = surface->add_subcommand("family", "The quadratic x^2 - 4(2N)! and its N square values");
  auto big_n = std::make_shared<unsigned long>(0);
  family->add_option("--N", *big_n, "N >= 1")->required();
  family->add_flag("--json", d.as_json, "Machine-readable output");
  family->callback([&d, big_n] {
    d.action = [&d, n = *big_n] {
      const CounterexampleFamily fam = counterexample_family(n);
      if (d.as_json) {
        json ns = json::array();
        json rs = json::array();
        for (const auto& a : fam.nodes) ns.push_back(a.get_str());
        for (const auto& r : fam.roots) rs.push_back(r.get_str());
        d.emit({{"N", n}, {"f", quadratic_json(fam.f)}, {"nodes", ns}, {"roots", rs}});
        return;
      }
      d.out << "f = " << fam.f.str() << "\n";
      for (std::size_t i = 0; i < fam.nodes.size(); ++i) {
        d.out << "a_" << i + 1 << " = " << fam.nodes[i].get_str() << ", f(a_" << i + 1 << ") = "
              << fam.roots[i].get_str() << "^2\n";
      }
    };
  });

  auto* line = surface->add_subcommand("line", "Correspondence between quadratics and surface points");
  auto line_nodes = std::make_shared<std::string>();
  auto quad = std::make_shared<std::string>();
  auto line_point = std::make_shared<std::string>();
  line->add_option("--nodes", *line_nodes, "a_1,...,a_n")->required();
  auto* f_opt = line->add_option("--f", *quad, "u,v for f = x^2 + ux + v");
  auto* p_opt = line->add_option("--point", *line_point, "x_0,...,x_n with x_0 != 0");
  f_opt->excludes(p_opt);
  line->add_flag("--json", d.as_json, "Machine-readable output");
  line->callback([&d, line_nodes, quad, line_point, f_opt, p_opt] {
    if (f_opt->count() == 0 && p_opt->count() == 0) throw UsageError("one of --f or --point is required");
    auto as = rational_list("--nodes", *line_nodes);
    std::vector<Rat> coeffs;
    std::vector<Rat> coords;
    if (f_opt->count()) {
      coeffs = rational_list("--f", *quad);
      if (coeffs.size() != 2) throw UsageError("--f: expected u,v");
    } else {
      coords = rational_list("--point", *line_point);
    }
    d.action = [&d, as, coeffs, coords] {
      const EvaluationNodes en(as);
      const BuchiSurface s = BuchiSurface::from_nodes(en);
      MonicQuadratic f;
      ProjectivePoint p({1});
      if (!coeffs.empty()) {
        f = MonicQuadratic{coeffs[0], coeffs[1]};
        p = j_of_f(en, f);
      } else {
        p = ProjectivePoint(coords);
        f = f_of_point(en, p);
      }
      const bool on = contains(s, p);
      const auto member = on ? trivial_line_member(s, p) : std::nullopt;
      if (d.as_json) {
        json j = {{"nodes", rats_json(as)}, {"f", quadratic_json(f)}, {"point", point_json(p)}, {"on_surface", on}};
        j["f_is_square"] = f.is_square();
        j["trivial_line"] = membership_json(member);
        d.emit(j);
        return;
      }
      d.out << "f = " << f.str() << "\n";
      d.out << "point = " << point_text(p) << "\n";
      d.out << "on surface: " << yes_no(on) << "\n";
      d.out << "f is a square: " << yes_no(f.is_square()) << "\n";
      d.out << "trivial line: " << membership_text(member) << "\n";
    };
  });
}

struct PadicFlags {
  unsigned long p = 0;
  std::string poly;
  std::string num;
  std::string den = "1";
  std::string rho;
  std::string rhos;
};

void add_padic(CLI::App& app, Dispatcher& d) {
  auto* padic = app.add_subcommand("padic", "Exact p-adic Nevanlinna quantities (logs base p, r = p^rho)");
  padic->require_subcommand(1);

  auto add_p = [](CLI::App* sub, std::shared_ptr<PadicFlags> f) {
    sub->add_option("--p", f->p, "Prime p")->required();
  };
  auto add_f = [](CLI::App* sub, std::shared_ptr<PadicFlags> f) {
    sub->add_option("--num", f->num, "Numerator polynomial in z")->required();
    sub->add_option("--den", f->den, "Denominator polynomial in z")->capture_default_str();
  };

  {
    auto* norm = padic->add_subcommand("norm", "log_p |h|_r of a polynomial or rational function");
    auto f = std::make_shared<PadicFlags>();
    add_p(norm, f);
    auto* poly = norm->add_option("--poly", f->poly, "Polynomial in z");
    auto* num = norm->add_option("--num", f->num, "Numerator polynomial in z");
    norm->add_option("--den", f->den, "Denominator polynomial in z")->needs(num);
    poly->excludes(num);
    norm->add_option("--rho", f->rho, "Log radius rho")->required();
    norm->add_flag("--json", d.as_json, "Machine-readable output");
    norm->callback([&d, f, poly, num] {
      if (poly->count() == 0 && num->count() == 0) throw UsageError("one of --poly or --num is required");
      const Rat rho = rational("--rho", f->rho);
      d.action = [&d, f, rho, use_poly = poly->count() > 0] {
        const PadicContext ctx(f->p);
        const Rat value = use_poly ? gauss_log_norm(reduction::parse_upoly(f->poly), ctx, LogRadius{rho})
                                   : gauss_log_norm(ratfunc_of(f->num, f->den), ctx, LogRadius{rho});
        if (d.as_json) {
          d.emit({{"p", f->p}, {"rho", rat_json(rho)}, {"log_norm", rat_json(value)}});
          return;
        }
        d.out << "log_" << f->p << " |h|_r = " << to_string(value) << " at r = " << f->p << "^" << to_string(rho)
              << "\n";
      };
    });
  }
  {
    auto* zeros = padic->add_subcommand("zeros", "Zeros of a polynomial in the closed disc |z| <= p^rho");
    auto f = std::make_shared<PadicFlags>();
    add_p(zeros, f);
    zeros->add_option("--poly", f->poly, "Polynomial in z")->required();
    zeros->add_option("--rho", f->rho, "Log radius rho")->required();
    zeros->add_flag("--json", d.as_json, "Machine-readable output");
    zeros->callback([&d, f] {
      const Rat rho = rational("--rho", f->rho);
      d.action = [&d, f, rho] {
        const PadicContext ctx(f->p);
        const UPoly h = reduction::parse_upoly(f->poly);
        const unsigned long n = count_zeros(h, ctx, LogRadius{rho});
        const Rat big_n = counting_N(h, ctx, LogRadius{rho});
        const NewtonPolygon np = newton_polygon(h, ctx);
        if (d.as_json) {
          json segs = json::array();
          for (const auto& s : np.segments) segs.push_back({{"root_valuation", rat_json(s.root_valuation)}, {"length", s.length}});
          d.emit({{"p", f->p},
                  {"rho", rat_json(rho)},
                  {"zeros", n},
                  {"N", rat_json(big_n)},
                  {"order_at_zero", h.order_at_zero()},
                  {"newton_polygon", segs}});
          return;
        }
        d.out << "n(r, h, 0) = " << n << "\n";
        d.out << "N(r, h, 0) = " << to_string(big_n) << "\n";
        d.out << "zeros at the origin: " << h.order_at_zero() << "\n";
        for (const auto& s : np.segments) {
          d.out << "  " << s.length << " root(s) of valuation " << to_string(s.root_valuation) << "\n";
        }
      };
    });
  }
  {
    auto* pjf = padic->add_subcommand("pjf", "log|f|_r - N(r,f,0) + N(r,f,inf) over a radius grid");
    auto f = std::make_shared<PadicFlags>();
    add_p(pjf, f);
    add_f(pjf, f);
    pjf->add_option("--rhos", f->rhos, "Comma-separated log radii")->required();
    pjf->add_flag("--json", d.as_json, "Machine-readable output");
    pjf->callback([&d, f] {
      const auto rhos = rational_list("--rhos", f->rhos);
      d.action = [&d, f, rhos] {
        const PjfResult r = check_pjf(ratfunc_of(f->num, f->den), PadicContext(f->p), rhos);
        if (d.as_json) {
          json j = {{"p", f->p}, {"rhos", rats_json(rhos)}, {"values", rats_json(r.values)}};
          j["constant"] = r.constant ? rat_json(*r.constant) : json(nullptr);
          j["offending_rho"] = r.offending_rho ? rat_json(*r.offending_rho) : json(nullptr);
          d.emit(j);
          return;
        }
        for (std::size_t i = 0; i < rhos.size(); ++i) {
          d.out << "rho = " << to_string(rhos[i]) << ": " << to_string(r.values[i]) << "\n";
        }
        if (r.constant) {
          d.out << "constant: " << to_string(*r.constant) << "\n";
        } else {
          d.out << "not constant: first disagreement at rho = " << to_string(*r.offending_rho) << "\n";
        }
      };
    });
  }
  {
    auto* ldl = padic->add_subcommand("ldl", "|f^(n)/f|_r <= r^-n");
    auto f = std::make_shared<PadicFlags>();
    auto n = std::make_shared<unsigned>(1);
    add_p(ldl, f);
    add_f(ldl, f);
    ldl->add_option("--n", *n, "Derivative order n >= 1")->capture_default_str();
    ldl->add_option("--rho", f->rho, "Log radius rho")->required();
    ldl->add_flag("--json", d.as_json, "Machine-readable output");
    ldl->callback([&d, f, n] {
      const Rat rho = rational("--rho", f->rho);
      d.action = [&d, f, rho, order = *n] {
        const bool ok = check_ldl(ratfunc_of(f->num, f->den), order, PadicContext(f->p), LogRadius{rho});
        if (d.as_json) {
          d.emit({{"p", f->p}, {"n", order}, {"rho", rat_json(rho)}, {"holds", ok}});
          return;
        }
        d.out << "|f^(" << order << ")/f|_r <= r^-" << order << ": " << yes_no(ok) << "\n";
      };
    });
  }
  {
    auto* fmt = padic->add_subcommand("fmt", "First main theorem defect m(a) + N(a) - m(inf) - N(inf)");
    auto f = std::make_shared<PadicFlags>();
    auto a = std::make_shared<std::string>();
    add_p(fmt, f);
    add_f(fmt, f);
    fmt->add_option("--a", *a, "Target value a")->required();
    fmt->add_option("--rhos", f->rhos, "Comma-separated log radii")->required();
    fmt->add_flag("--json", d.as_json, "Machine-readable output");
    fmt->callback([&d, f, a] {
      const Rat target = rational("--a", *a);
      const auto rhos = rational_list("--rhos", f->rhos);
      d.action = [&d, f, target, rhos] {
        const GridReport r = check_fmt(ratfunc_of(f->num, f->den), target, PadicContext(f->p), rhos);
        if (d.as_json) {
          json j = grid_json(r);
          j["a"] = rat_json(target);
          d.emit(j);
          return;
        }
        print_grid(d.out, r, "defect");
      };
    });
  }
  {
    auto* smt = padic->add_subcommand("smt", "sum_i m(r,f,a_i) - N(r,f,inf), reported on a grid");
    auto f = std::make_shared<PadicFlags>();
    auto targets = std::make_shared<std::string>();
    add_p(smt, f);
    add_f(smt, f);
    smt->add_option("--targets", *targets, "Distinct target values a_1,...,a_q")->required();
    smt->add_option("--rhos", f->rhos, "Comma-separated log radii")->required();
    smt->add_flag("--json", d.as_json, "Machine-readable output");
    smt->callback([&d, f, targets] {
      const auto as = rational_list("--targets", *targets);
      const auto rhos = rational_list("--rhos", f->rhos);
      d.action = [&d, f, as, rhos] {
        const GridReport r = check_smt(ratfunc_of(f->num, f->den), as, PadicContext(f->p), rhos);
        if (d.as_json) {
          json j = grid_json(r);
          j["targets"] = rats_json(as);
          d.emit(j);
          return;
        }
        print_grid(d.out, r, "value");
      };
    });
  }
  {
    auto* delta = padic->add_subcommand("delta", "g'^2 - 4 f'^2 g = 4 h Δ_h for g = (a + f)^2 - u^2, h = u");
    auto f = std::make_shared<PadicFlags>();
    auto u_num = std::make_shared<std::string>();
    auto u_den = std::make_shared<std::string>("1");
    auto a = std::make_shared<std::string>();
    add_f(delta, f);
    delta->add_option("--u", *u_num, "Numerator of u")->required();
    delta->add_option("--u-den", *u_den, "Denominator of u")->capture_default_str();
    delta->add_option("--a", *a, "Shift a")->required();
    delta->add_flag("--json", d.as_json, "Machine-readable output");
    delta->callback([&d, f, u_num, u_den, a] {
      const Rat shift = rational("--a", *a);
      d.action = [&d, f, u_num, u_den, shift] {
        const bool ok = delta_identity(ratfunc_of(f->num, f->den), ratfunc_of(*u_num, *u_den), shift);
        if (d.as_json) {
          d.emit({{"a", rat_json(shift)}, {"holds", ok}});
          return;
        }
        d.out << "delta identity: " << (ok ? "holds" : "fails") << "\n";
      };
    });
  }
}

void add_reduction(CLI::App& app, Dispatcher& d) {
  auto* comp = app.add_subcommand("compile", "Compile a polynomial system to a diagonal quadratic system");
  auto in = std::make_shared<std::string>();
  auto m = std::make_shared<int>(reduction::kDefaultGadgetLength);
  auto emit = std::make_shared<std::string>("text");
  comp->add_option("--in", *in, "Source file (integer polynomial equations, ';'-separated)")->required();
  comp->add_option("--m", *m, "Gadget length M >= 3")->capture_default_str();
  comp->add_option("--emit", *emit, "Output form")->check(CLI::IsMember({"text", "json", "tac"}))->capture_default_str();
  comp->add_flag("--json", d.as_json, "Same as --emit json");
  comp->callback([&d, in, m, emit] {
    d.action = [&d, path = *in, M = *m, form = d.as_json ? std::string("json") : *emit] {
      const auto sys = reduction::parse(read_file(path));
      const auto target = reduction::compile(sys, M);
      if (form == "json") {
        d.out << reduction::to_json(target) << "\n";
      } else if (form == "tac") {
        d.out << target.intermediate.program.str();
      } else {
        d.out << reduction::to_text(target);
      }
    };
  });

  auto* check = app.add_subcommand("check", "Bounded equisatisfiability check of the compiled system");
  auto check_in = std::make_shared<std::string>();
  auto box = std::make_shared<long>(10);
  auto check_m = std::make_shared<int>(reduction::kDefaultGadgetLength);
  check->add_option("--in", *check_in, "Source file")->required();
  check->add_option("--box", *box, "Source assignments range over [-box, box]")->capture_default_str();
  check->add_option("--m", *check_m, "Gadget length M >= 3")->capture_default_str();
  check->add_flag("--json", d.as_json, "Machine-readable output");
  check->callback([&d, check_in, box, check_m] {
    d.action = [&d, path = *check_in, b = *box, M = *check_m] {
      const auto sys = reduction::parse(read_file(path));
      const auto target = reduction::compile(sys, M);
      reduction::EquisatOptions options;
      options.threads = worker_threads();
      const auto r = reduction::bounded_equisat(sys, target, b, options);
      auto witness_json = [&](const reduction::Witness& w) {
        json j = json::object();
        for (const auto& v : sys.variables) j[v] = int_json(w.at(v));
        return j;
      };
      if (d.as_json) {
        json sols = json::array();
        for (const auto& w : r.source_solutions) sols.push_back(witness_json(w));
        json lf = json::array();
        for (const auto& w : r.lift_failures) lf.push_back(witness_json(w));
        json pf = json::array();
        for (const auto& w : r.projection_failures) pf.push_back(witness_json(w));
        d.emit({{"box", b},
                {"M", M},
                {"assignments", r.assignments},
                {"source_solutions", sols},
                {"lifted", r.lifted},
                {"lift_failures", lf},
                {"backward_checked", r.backward_checked},
                {"gadget_bound", r.gadget_bound},
                {"gadget_solutions", r.gadget_solutions},
                {"nontrivial_gadget_solutions", r.nontrivial_gadget_solutions},
                {"target_solutions", r.target_solutions},
                {"projection_failures", pf},
                {"uncovered", r.uncovered},
                {"conditional", "BP(Z," + std::to_string(M) + ")"},
                {"pass", r.pass()}});
        return;
      }
      d.out << "source assignments in [-" << b << "," << b << "]^" << sys.variables.size() << ": " << r.assignments
            << "\n";
      d.out << "source solutions: " << r.source_solutions.size() << ", lifted: " << r.lifted
            << ", lift failures: " << r.lift_failures.size() << "\n";
      for (const auto& w : r.source_solutions) d.out << "  " << witness_json(w).dump() << "\n";
      if (r.backward_checked) {
        d.out << "backward check (gadget witnesses |w_i| <= " << r.gadget_bound << "): " << r.target_solutions
              << " target solutions, " << r.projection_failures.size() << " projection failures, "
              << r.nontrivial_gadget_solutions << " non-square gadget outcomes of " << r.gadget_solutions << "\n";
      } else {
        d.out << "backward check skipped: derived gadget bound " << r.gadget_bound << " exceeds the limit\n";
      }
      d.out << "backward direction is conditional on BP(Z," << M << ")\n";
      d.out << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
    };
  });

  auto* formulas = app.add_subcommand("formulas", "Print the existential definitions F, G, H or Psi");
  auto mode = std::make_shared<std::string>();
  auto fm = std::make_shared<int>(35);
  auto deltas = std::make_shared<std::string>("1,2,3,4,5,6,7");
  formulas->add_option("--mode", *mode, "F, G, H or Psi")->required();
  formulas->add_option("--m", *fm, "Number of gadget variables M >= 3")->capture_default_str();
  formulas->add_option("--deltas", *deltas, "δ_2,...,δ_n for Psi")->capture_default_str();
  formulas->add_flag("--json", d.as_json, "Machine-readable output");
  formulas->callback([&d, mode, fm, deltas] {
    const auto parsed = reduction::parse_formula_mode(*mode);
    if (!parsed) throw UsageError("--mode: expected F, G, H or Psi, got " + *mode);
    const auto ds = rational_list("--deltas", *deltas);
    d.action = [&d, m = *parsed, M = *fm, ds, name = *mode] {
      const std::string text = reduction::print_formulas(m, M, ds);
      if (d.as_json) {
        d.emit({{"mode", name}, {"M", M}, {"text", text}});
        return;
      }
      d.out << text;
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Exact computations around Büchi's n-squares problem", "buchi");
  app.require_subcommand(1);
  Dispatcher d{out, false, {}};
  add_seq(app, d);
  add_surface(app, d);
  add_padic(app, d);
  add_reduction(app, d);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  }
  if (!d.action) {
    err << "error: nothing to do\n";
    return kExitUsage;
  }
  try {
    d.action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace buchi::cli
