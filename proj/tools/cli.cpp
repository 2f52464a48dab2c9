#include "stripcert/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <thread>

#include "stripcert/asymptotics/asymptotics.hpp"
#include "stripcert/cli/expr.hpp"
#include "stripcert/errors.hpp"
#include "stripcert/liyau/liyau.hpp"
#include "stripcert/polya/polya.hpp"
#include "stripcert/util/parallel.hpp"

namespace stripcert::cli {

using json = nlohmann::ordered_json;
using reals::ExactValue;

namespace {

constexpr int kSchemaVersion = 1;

json exact_json(const ExactValue& v) { return {{"exact", v.to_prefix()}, {"decimal30", v.to_decimal(30)}}; }

json interval_json(const ExactValue& lo, const ExactValue& hi) {
  return {{"lo_exact", lo.to_prefix()},
          {"lo_decimal30", lo.to_decimal(30)},
          {"hi_exact", hi.to_prefix()},
          {"hi_decimal30", hi.to_decimal(30)}};
}

json certificates_json(const liyau::CertificateRecord& rec) {
  json items = json::array();
  for (const auto& c : rec.items) items.push_back({{"name", c.name}, {"statement", c.statement}, {"holds", c.holds}});
  return items;
}

json report(const std::string& command) { return {{"schema_version", kSchemaVersion}, {"command", command}}; }

void human(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    if (it->is_structured() && !it->empty()) {
      out << pad << key << ":\n";
      human(*it, out, indent + 2);
    } else {
      out << pad << key << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    }
  }
}

std::string mid17(const reals::Ball& b) { return b.center_string(17); }

struct Options {
  long precision_cap = 4096;
  std::string threads = "1";
  std::string format;  // json by default, csv for plot-data

  std::string h;
  std::string h_range;
  std::string range;
  long kmax = 0;
  std::string checkpoint;
  bool progress = false;
  std::string tol = "1e-5";
  long n = 0;
  std::string heights;
  std::string metric;
  long k = 0;
  long steps = 100;
  std::string lambda;
};

json polya_verify(const Options& o) {
  const ExactValue h = parse_exact(o.h);
  const auto v = polya::polya_verdict(h);
  json r = report("polya verify");
  r["h"] = exact_json(h);
  r["verdict"] = polya::verdict_name(v.kind);
  r["failing_orders"] = v.failing_orders;
  r["gate"] = v.gate;
  return r;
}

json polya_failure_intervals(const Options& o) {
  ExactValue lo = polya::analytic_height(), hi = polya::lambda1_height();
  if (!o.h_range.empty()) std::tie(lo, hi) = parse_range(o.h_range);
  if (reals::sign(lo) <= 0) throw InvalidArgument("h-range must be positive");
  const long kmax = o.kmax > 0 ? o.kmax : polya::kSearchOrderCap;
  json r = report("polya failure-intervals");
  r["kmax"] = kmax;
  r["h_range"] = {{"lo", exact_json(lo)}, {"hi", exact_json(hi)}};
  json reports = json::array();
  for (const auto& rep : polya::failure_sets(kmax, lo, hi)) {
    json ivs = json::array();
    for (const auto& iv : rep.intervals) ivs.push_back(interval_json(iv.lo, iv.hi));
    reports.push_back({{"k", rep.k}, {"intervals", ivs}});
  }
  r["reports"] = reports;
  json gates = json::array();
  for (const auto& g : polya::polya_gate_certificates())
    gates.push_back({{"name", g.name}, {"statement", g.statement}, {"value", g.value}, {"holds", g.holds}});
  r["gate_certificates"] = gates;
  return r;
}

json windows_json(const liyau::ExceptionalResult& res) {
  json windows = json::array();
  for (const auto& w : res.windows) {
    json ivs = json::array();
    for (const auto& c : w.ranges) ivs.push_back(interval_json(c.lo, c.hi));
    windows.push_back({{"k", w.k}, {"intervals", ivs}});
  }
  return windows;
}

std::vector<long> orders_of(const liyau::ExceptionalResult& res) {
  std::vector<long> ks;
  for (const auto& w : res.windows) ks.push_back(w.k);
  return ks;
}

liyau::ExceptionalResult run_exceptional(const ExactValue& lo, const ExactValue& hi, const Options& o,
                                         std::ostream& err) {
  liyau::ExceptionalOptions opts;
  opts.k_max = o.kmax > 0 ? o.kmax : liyau::kOrderCap;
  if (!o.checkpoint.empty()) opts.checkpoint_path = o.checkpoint;
  if (o.progress) opts.progress = [&err, k_max = opts.k_max](long done) { err << "swept " << done << "/" << k_max << "\n"; };
  return liyau::exceptional_sweep(lo, hi, opts);
}

json liyau_exceptional(const Options& o, std::ostream& err) {
  const ExactValue pi2 = reals::pow(ExactValue::pi(), 2);
  ExactValue lo = pi2 / 2, hi = pi2;
  if (!o.range.empty()) std::tie(lo, hi) = parse_range(o.range);
  const auto res = run_exceptional(lo, hi, o, err);
  json r = report("liyau exceptional");
  r["range"] = {{"lo", exact_json(lo)}, {"hi", exact_json(hi)}};
  r["kmax"] = o.kmax > 0 ? o.kmax : liyau::kOrderCap;
  r["completed"] = res.completed;
  r["orders"] = orders_of(res);
  r["windows"] = windows_json(res);
  return r;
}

json liyau_verdict_json(const liyau::LiYauVerdict& v) {
  return {{"verdict", v.kind == liyau::LiYauVerdictKind::Holds ? "holds" : "fails_at"},
          {"failing_orders", v.failing_orders},
          {"gate", v.gate}};
}

json liyau_verify(const Options& o, std::ostream& err, bool& certified) {
  json r = report("liyau verify");
  certified = true;
  if (!o.h.empty()) {
    const ExactValue h = parse_exact(o.h);
    r["h"] = exact_json(h);
    r.update(liyau_verdict_json(liyau::liyau_verdict(h)));
    return r;
  }
  const ExactValue pi2 = reals::pow(ExactValue::pi(), 2);
  r["lowrange_certificates"] = certificates_json(liyau::lowrange_certificates());
  const auto caps = liyau::sweep_cap_certificates();
  r["sweep_cap_certificates"] = certificates_json(caps);
  certified = certified && caps.all_hold();

  const auto res = run_exceptional(pi2 / 2, pi2, o, err);
  const auto orders = orders_of(res);
  const long kmax = o.kmax > 0 ? o.kmax : liyau::kOrderCap;
  const bool small = std::all_of(orders.begin(), orders.end(), [](long k) { return k <= 86; });
  r["exceptional"] = {{"kmax", kmax}, {"completed", res.completed}, {"orders", orders}, {"all_within_cell_cap", small}};
  certified = certified && small && kmax >= liyau::kOrderCap;

  const auto cells = liyau::build_partition(86);
  std::vector<char> ok(cells.size(), 0);
  std::vector<std::vector<long>> bad(cells.size());
  util::parallel_for(cells.size(), [&](size_t i) {
    ok[i] = liyau::verify_cell(cells[i], 86);
    bad[i] = liyau::liyau_check_cell(cells[i], 86);
  });
  long unverified = 0;
  json violations = json::array();
  for (size_t i = 0; i < cells.size(); ++i) {
    unverified += !ok[i];
    for (long k : bad[i]) violations.push_back({{"cell", i}, {"k", k}});
  }
  r["partition"] = {{"cells", cells.size()}, {"k_cap", 86}, {"unverified_cells", unverified}, {"violations", violations}};
  certified = certified && unverified == 0 && violations.empty();

  json beyond = json::array();
  for (const char* s : {"10", "12", "20", "100"}) {
    const ExactValue h = parse_exact(s);
    const auto v = liyau::liyau_verdict(h);
    json item = {{"h", exact_json(h)}};
    item.update(liyau_verdict_json(v));
    beyond.push_back(item);
    certified = certified && v.kind == liyau::LiYauVerdictKind::FailsAt && v.failing_orders == std::vector<long>{1};
  }
  r["beyond_pi_squared"] = beyond;
  r["holds_on"] = {{"lo", exact_json(ExactValue(0L))}, {"hi", exact_json(pi2)}, {"lo_closed", false}, {"hi_closed", true}};
  r["certified"] = certified;
  return r;
}

json disk_critical_radius(const Options& o) {
  const ExactValue tol = parse_exact(o.tol);
  const auto q = tol.as_rational();
  if (!q || *q <= 0) throw InvalidArgument("tol must be a positive rational");
  const auto enc = asymptotics::disk_critical_radius(*q);
  json r = report("disk critical-radius");
  r["tol"] = exact_json(tol);
  r["lo"] = exact_json(ExactValue(enc.lo));
  r["hi"] = exact_json(ExactValue(enc.hi));
  r["width"] = exact_json(ExactValue(mpq_class(enc.hi - enc.lo)));
  r["midpoint"] = exact_json(ExactValue(mpq_class((enc.lo + enc.hi) / 2)));
  r["steps"] = enc.steps;
  return r;
}

json threshold_json(const std::string& command, const asymptotics::Threshold& t) {
  json r = report(command);
  r["n"] = t.n;
  r["exact"] = t.exact ? json(t.exact->to_prefix()) : json(nullptr);
  r["expression"] = t.expression;
  r["decimal30"] = t.enclosure.center_string(30);
  r["radius"] = reals::Ball(t.enclosure.radius(), t.enclosure.radius()).center_string(3);
  return r;
}

json product_check(const Options& o) {
  std::vector<ExactValue> hs;
  json heights = json::array();
  for (const auto& part : split_top_level(o.heights)) {
    hs.push_back(parse_exact(part));
    heights.push_back(exact_json(hs.back()));
  }
  json r = report("product check");
  r["heights"] = heights;
  r["n"] = hs.size();
  r["necessary"] = asymptotics::product_necessary_condition(hs);
  if (hs.size() >= 3) {
    r["sufficient"] = asymptotics::product_sufficient_condition(hs);
  } else {
    r["sufficient"] = nullptr;
  }
  return r;
}

json isoperimetric(const Options&) {
  json r = report("isoperimetric ranges");
  json ivs = json::array();
  for (const auto& iv : asymptotics::isoperimetric_ranges())
    ivs.push_back({{"lo", exact_json(iv.lo)},
                   {"hi", exact_json(iv.hi)},
                   {"lo_closed", iv.lo_closed},
                   {"hi_closed", iv.hi_closed}});
  r["intervals"] = ivs;
  return r;
}

// Rows (h, (lambda_K - 2K/h)/sqrt(K)).
std::vector<std::pair<std::string, std::string>> plot_rows(const Options& o) {
  if (o.metric != "polya-deficit") throw InvalidArgument("unknown metric: " + o.metric);
  if (o.k < 1) throw InvalidArgument("--k must be >= 1");
  if (o.steps < 1) throw InvalidArgument("--steps must be >= 1");
  const auto [lo, hi] = parse_range(o.h_range);
  if (reals::sign(lo) <= 0) throw InvalidArgument("h-range must be positive");
  std::vector<std::pair<std::string, std::string>> rows(static_cast<size_t>(o.steps + 1));
  const ExactValue root_k = reals::sqrt(ExactValue(o.k));
  util::parallel_for(rows.size(), [&](size_t i) {
    const ExactValue h = reals::canonicalize(lo + (hi - lo) * ExactValue(mpq_class(static_cast<long>(i), o.steps)));
    const ExactValue d = (spectrum::kth_eigenvalue(h, o.k) - 2 * ExactValue(o.k) / h) / root_k;
    rows[i] = {mid17(h.eval(128)), mid17(d.eval(128))};
  });
  return rows;
}

json oracle_count(const Options& o) {
  const ExactValue h = parse_exact(o.h);
  const ExactValue lambda = parse_exact(o.lambda);
  json r = report("oracle count");
  r["h"] = exact_json(h);
  r["lambda"] = exact_json(lambda);
  r["count"] = spectrum::counting_function(h, lambda);
  return r;
}

void emit(const json& r, const std::string& format, std::ostream& out) {
  if (format == "human") {
    human(r, out, 0);
  } else {
    out << r.dump(2) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Certified spectral computations on cylindrical strips"};
  app.set_help_flag("--help", "Print help and exit");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--precision-cap", o.precision_cap, "Largest precision in bits for certified comparisons")
      ->check(CLI::Range(256L, 1L << 24));
  app.add_option("--threads", o.threads, "Worker threads (integer or auto)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));

  auto* polya_cmd = app.add_subcommand("polya", "Polya inequality on the strip")->require_subcommand(1);
  auto* polya_verify_cmd = polya_cmd->add_subcommand("verify", "Verdict at one height");
  polya_verify_cmd->add_option("--h", o.h, "Height as an exact expression")->required();
  auto* polya_fail_cmd = polya_cmd->add_subcommand("failure-intervals", "Failure windows per order");
  polya_fail_cmd->add_option("--kmax", o.kmax, "Largest order")->check(CLI::PositiveNumber);
  polya_fail_cmd->add_option("--h-range", o.h_range, "lo,hi");

  auto* liyau_cmd = app.add_subcommand("liyau", "Li-Yau inequalities on the strip")->require_subcommand(1);
  auto* liyau_verify_cmd = liyau_cmd->add_subcommand("verify", "Verdict at one height, or the full certificate");
  liyau_verify_cmd->add_option("--h", o.h, "Height as an exact expression");
  auto* liyau_exc_cmd = liyau_cmd->add_subcommand("exceptional", "Orders where the relaxed condition fails");
  liyau_exc_cmd->add_option("--range", o.range, "lo,hi inside [pi^2/2, pi^2]");
  for (auto* c : {liyau_verify_cmd, liyau_exc_cmd}) {
    c->add_option("--kmax", o.kmax, "Largest order of the relaxed sweep")->check(CLI::PositiveNumber);
    c->add_option("--checkpoint", o.checkpoint, "Checkpoint file for the relaxed sweep");
    c->add_flag("--progress", o.progress, "Report sweep progress on stderr");
  }

  auto* disk_cmd = app.add_subcommand("disk", "Geodesic disks on the cylinder")->require_subcommand(1);
  disk_cmd->add_subcommand("critical-radius", "Enclosure of the critical radius")
      ->add_option("--tol", o.tol, "Enclosure width");

  auto* thr_cmd = app.add_subcommand("thresholds", "Height thresholds for product domains")->require_subcommand(1);
  auto* sn_cmd = thr_cmd->add_subcommand("sn", "Sphere times interval");
  auto* cube_cmd = thr_cmd->add_subcommand("hypercube", "Circle times a cube");
  for (auto* c : {sn_cmd, cube_cmd}) c->add_option("--n", o.n, "Dimension")->required()->check(CLI::PositiveNumber);

  auto* product_cmd = app.add_subcommand("product", "Products of intervals")->require_subcommand(1);
  product_cmd->add_subcommand("check", "Necessary and sufficient conditions")
      ->add_option("--heights", o.heights, "h1,h2,...")
      ->required();

  auto* iso_cmd = app.add_subcommand("isoperimetric", "Isoperimetric domains")->require_subcommand(1);
  iso_cmd->add_subcommand("ranges", "Areas where the conjecture holds");

  auto* plot_cmd = app.add_subcommand("plot-data", "Rows for external plotting");
  plot_cmd->add_option("--metric", o.metric, "polya-deficit")->required();
  plot_cmd->add_option("--k", o.k, "Order")->required();
  plot_cmd->add_option("--h-range", o.h_range, "lo,hi")->required();
  plot_cmd->add_option("--steps", o.steps, "Number of subintervals");

  auto* oracle_cmd = app.add_subcommand("oracle", "Reference computations")->require_subcommand(1);
  auto* count_cmd = oracle_cmd->add_subcommand("count", "Counting function N(lambda)");
  count_cmd->add_option("--h", o.h, "Height")->required();
  count_cmd->add_option("--lambda", o.lambda, "Eigenvalue bound")->required();

  std::vector<const char*> argv{"stripcert"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    reals::set_precision_cap(o.precision_cap);
    if (o.threads == "auto") {
      util::set_thread_count(std::max(1u, std::thread::hardware_concurrency()));
    } else {
      long t = 0;
      try {
        t = std::stol(o.threads);
      } catch (const std::exception&) {
        throw InvalidArgument("--threads must be a positive integer or auto");
      }
      if (t < 1 || t > 1024) throw InvalidArgument("--threads must be in 1..1024");
      util::set_thread_count(static_cast<unsigned>(t));
    }
    const bool is_plot = plot_cmd->parsed();
    if (o.format.empty()) o.format = is_plot ? "csv" : "json";
    if (o.format == "csv" && !is_plot) throw InvalidArgument("csv output is only available for plot-data");

    if (is_plot) {
      const auto rows = plot_rows(o);
      if (o.format == "json") {
        json r = report("plot-data");
        r["metric"] = o.metric;
        r["k"] = o.k;
        json arr = json::array();
        for (const auto& [h, d] : rows) arr.push_back({h, d});
        r["columns"] = {"h", "deficit"};
        r["rows"] = arr;
        emit(r, "json", out);
      } else {
        out << "h,deficit\n";
        for (const auto& [h, d] : rows) out << h << "," << d << "\n";
      }
      return kExitOk;
    }

    json r;
    bool certified = true;
    if (polya_verify_cmd->parsed()) {
      r = polya_verify(o);
    } else if (polya_fail_cmd->parsed()) {
      r = polya_failure_intervals(o);
    } else if (liyau_verify_cmd->parsed()) {
      r = liyau_verify(o, err, certified);
    } else if (liyau_exc_cmd->parsed()) {
      r = liyau_exceptional(o, err);
    } else if (disk_cmd->parsed()) {
      r = disk_critical_radius(o);
    } else if (sn_cmd->parsed()) {
      r = threshold_json("thresholds sn", asymptotics::eta1(o.n));
    } else if (cube_cmd->parsed()) {
      r = threshold_json("thresholds hypercube", asymptotics::hypercube_threshold(o.n));
    } else if (product_cmd->parsed()) {
      r = product_check(o);
    } else if (iso_cmd->parsed()) {
      r = isoperimetric(o);
    } else if (count_cmd->parsed()) {
      r = oracle_count(o);
    }
    emit(r, o.format, out);
    return certified ? kExitOk : kExitUncertified;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "uncertified: " << e.what() << "\n";
    return kExitUncertified;
  }
}

}  // namespace stripcert::cli
