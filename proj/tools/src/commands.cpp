#include "floorpoly_cli/app.hpp"

#include "floorpoly/identity.hpp"
#include "floorpoly/partition_poly.hpp"
#include "floorpoly/random.hpp"
#include "floorpoly/version.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace floorpoly::cli {

using nlohmann::ordered_json;

namespace {

std::string join(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

std::string join(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

ordered_json strings(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

ordered_json header(const char* command) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["library_version"] = std::string(kLibraryVersion);
  j["command"] = command;
  return j;
}

std::string to_string(WitnessTarget t) {
  switch (t) {
    case WitnessTarget::g_k: return "g-k";
    case WitnessTarget::p_hat: return "p-hat";
    case WitnessTarget::uniform_control: return "uniform-control";
  }
  return "?";
}

struct TrialFailure {
  std::size_t trial = 0;
  std::string input;
  std::string detail;
};

std::optional<TrialFailure> run_identity_suite(const VerifyOptions& o) {
  const auto terms = generate_terms(o.n);
  if (terms.size() != identity_term_count(o.n))
    return TrialFailure{0, "n = " + std::to_string(o.n), "term count " + std::to_string(terms.size())};
  Rng rng(o.seed);
  for (std::size_t t = 0; t < o.trials; ++t) {
    std::vector<Rational> xs;
    for (unsigned i = 0; i < o.n; ++i) xs.push_back(random_rational(rng, 1000000, 1000000, true));
    const Rational lhs = eval_identity(std::span<const Rational>(xs), terms);
    const Rational rhs = product_of(xs);
    if (lhs != rhs) return TrialFailure{t, "x = " + join(xs), "sum of terms " + lhs.str() + " != product " + rhs.str()};
  }
  return std::nullopt;
}

std::optional<TrialFailure> run_partition_suite(const VerifyOptions& o) {
  if (o.n < 1 || o.n > kMaxPartitionN)
    throw std::out_of_range("verify partition: n must be in [1, " + std::to_string(kMaxPartitionN) + "]");
  Rng rng(o.seed);
  for (std::size_t t = 0; t < o.trials; ++t) {
    const Rational x = random_rational(rng, 1000000, 1000, true);
    const ABSeq s = ab_seq(x, o.n);
    for (unsigned k = 1; k <= o.n; ++k) {
      if (s.a[k - 1] + Rational(s.b[k - 1]) != x * Rational(s.b_at(k - 1)))
        return TrialFailure{t, "x = " + x.str(), "a_k + b_k != x b_{k-1} at k = " + std::to_string(k)};
      if (!power_identity_check(x, k))
        return TrialFailure{t, "x = " + x.str(), "power identity fails at n = " + std::to_string(k)};
      if (!mixed_identity_check(x, k))
        return TrialFailure{t, "x = " + x.str(), "mixed expansion fails at n = " + std::to_string(k)};
    }
  }
  return std::nullopt;
}

std::optional<TrialFailure> run_lemma1_suite(const VerifyOptions& o) {
  if (o.k < 1 || o.k > kMaxFklK)
    throw std::out_of_range("verify lemma1: k must be in [1, " + std::to_string(kMaxFklK) + "]");
  if (o.l < 1) throw std::out_of_range("verify lemma1: l must be positive");
  Rng rng(o.seed);
  for (std::size_t t = 0; t < o.trials; ++t) {
    // 0 < x < 100 with denominator at most 1000
    const auto q = uniform_int(rng, 1, 1000);
    const auto p = uniform_int(rng, 1, 100 * q - 1);
    const Rational x(Integer(static_cast<unsigned long>(p)), Integer(static_cast<unsigned long>(q)));
    const Lemma1Sides sides = lemma1_sides(x, o.k, o.l);
    if (!sides.holds())
      return TrialFailure{t, "x = " + x.str(), "{x^{:k}/l} = " + sides.lhs.str() + " but right side = " + sides.rhs.str()};
  }
  return std::nullopt;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

ordered_json scale_json(const DistributionReport& r) {
  ordered_json j;
  j["N"] = r.N;
  j["star_discrepancy"] = r.star_discrepancy;
  j["weyl"] = r.weyl;
  j["histogram"] = r.histogram;
  j["unresolved_count"] = r.unresolved_count;
  return j;
}

}  // namespace

int cmd_expand(const ExpandOptions& o, std::ostream& out, std::ostream& err) {
  if (o.certify && o.n > kMaxCertificateN) {
    err << "expand: --certify supports n <= " << kMaxCertificateN << "\n";
    return kExitUsage;
  }
  const auto terms = generate_terms(o.n);
  std::optional<CancellationCertificate> cert;
  if (o.certify) cert = cancellation_certificate(o.n);

  if (o.format == Format::json) {
    ordered_json j = header("expand");
    j["config"] = {{"n", o.n}, {"certify", o.certify}};
    j["term_count"] = terms.size();
    ordered_json list = ordered_json::array();
    for (const auto& t : terms) {
      const char* kind = t.kind == TermKind::combined ? "combined"
                         : t.kind == TermKind::split_floor ? "split-floor"
                                                           : "split-fractional";
      list.push_back({{"kind", kind}, {"cut_points", t.cut_points()}, {"sign", t.sign}, {"render", t.render()}});
    }
    j["terms"] = list;
    j["identity"] = render_identity(terms);
    if (cert) {
      j["certificate"] = {{"expanded_products", cert->expanded_products},
                          {"groups", cert->groups.size()},
                          {"bare_product_ok", cert->bare_product_ok},
                          {"residuals_zero", cert->residuals_zero},
                          {"characterization_ok", cert->characterization_ok},
                          {"notes", cert->notes},
                          {"certified", cert->certified()}};
    }
    out << j.dump(2) << "\n";
  } else {
    out << render_identity(terms) << "\n";
    if (cert) out << cert->summary();
  }
  return cert && !cert->certified() ? kExitVerificationFailure : kExitOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream&) {
  if (o.trials < 1) throw std::invalid_argument("verify: trials must be at least 1");
  std::optional<TrialFailure> failure;
  ordered_json config = {{"suite", o.suite}, {"trials", o.trials}, {"seed", o.seed}};
  if (o.suite == "identity") {
    failure = run_identity_suite(o);
    config["n"] = o.n;
  } else if (o.suite == "partition") {
    failure = run_partition_suite(o);
    config["n"] = o.n;
  } else if (o.suite == "lemma1") {
    failure = run_lemma1_suite(o);
    config["k"] = o.k;
    config["l"] = o.l;
  } else {
    throw std::invalid_argument("verify: unknown suite '" + o.suite + "'");
  }

  if (o.format == Format::json) {
    ordered_json j = header("verify");
    j["config"] = config;
    j["result"] = failure ? "fail" : "pass";
    if (failure)
      j["counterexample"] = {{"trial", failure->trial}, {"input", failure->input}, {"detail", failure->detail}};
    out << j.dump(2) << "\n";
  } else if (failure) {
    out << "verify " << o.suite << ": FAIL at trial " << failure->trial << " (seed " << o.seed << ")\n"
        << "  input: " << failure->input << "\n"
        << "  " << failure->detail << "\n";
  } else {
    out << "verify " << o.suite << ": pass (" << o.trials << " trials, seed " << o.seed << ")\n";
  }
  return failure ? kExitVerificationFailure : kExitOk;
}

int cmd_fkl(const FklOptions& o, std::ostream& out, std::ostream&) {
  std::vector<Rational> y;
  for (const auto& s : o.y) y.push_back(Rational::parse(s));
  const Rational f = f_kl(o.k, o.l, y);
  BarValues bars;
  if (o.k > 1) bars = bar_values(o.k, o.l, y);

  if (o.format == Format::json) {
    ordered_json j = header("fkl");
    j["config"] = {{"k", o.k}, {"l", o.l}, {"y", strings(y)}};
    ordered_json b = ordered_json::array();
    for (const auto& v : bars.b_bar) b.push_back(v.get_str());
    j["a_bar"] = strings(bars.a_bar);
    j["b_bar"] = b;
    j["f"] = f.str();
    out << j.dump(2) << "\n";
  } else {
    out << "k = " << o.k << ", l = " << o.l << ", y = " << join(y) << "\n";
    if (o.k > 1) out << "abar = " << join(bars.a_bar) << "\nbbar = " << join(bars.b_bar) << "\n";
    out << "f = " << f.str() << "\n";
  }
  return kExitOk;
}

int cmd_witness(const WitnessOptions& o, std::ostream& out, std::ostream&) {
  const FourierWitness w = fourier_witness(o.k, o.m, o.samples, o.seed, o.target, o.jobs);
  if (o.format == Format::json) {
    ordered_json j = header("witness");
    j["config"] = {{"k", o.k}, {"m", o.m}, {"samples", o.samples}, {"seed", o.seed}, {"target", to_string(o.target)}};
    j["re"] = w.re;
    j["im"] = w.im;
    j["estimate"] = w.estimate;
    j["radius"] = w.radius;
    j["witnessed"] = w.witnessed();
    out << j.dump(2) << "\n";
  } else {
    char line[256];
    std::snprintf(line, sizeof line, "witness %s k=%u m=%ld samples=%zu seed=%llu: |E e(X)| = %.6f +- %.6f -> %s\n",
                  to_string(o.target).c_str(), o.k, o.m, o.samples, static_cast<unsigned long long>(o.seed),
                  w.estimate, w.radius, w.witnessed() ? "nonuniform" : "not witnessed");
    out << line;
  }
  return kExitOk;
}

std::string dist_report_json(const DistOptions& o, const TwoScaleTrend& trend, const GeneratedSequence& samples) {
  const SequenceSpec& s = o.spec;
  ordered_json j = header("dist");
  ordered_json alphas = ordered_json::array();
  for (const auto& a : s.alphas) alphas.push_back(a.str());
  j["config"] = {{"variant", to_string(s.variant)},
                 {"alphas", alphas},
                 {"k", s.k},
                 {"m", s.m},
                 {"N", s.N},
                 {"precision_cap", s.precision_cap},
                 {"jobs", s.jobs},
                 {"harmonics", kDefaultWeylHarmonics},
                 {"bins", kDefaultHistogramBins}};
  j["thresholds"] = {{"uniform_ceiling", o.thresholds.uniform_ceiling},
                     {"nonuniform_floor", o.thresholds.nonuniform_floor}};
  const bool within = s.within_theorem_hypothesis();
  j["within_theorem_hypothesis"] = within;
  j["labels"] = within ? ordered_json::array() : ordered_json::array({"outside-theorem-hypothesis"});
  j["scales"] = ordered_json::array({scale_json(trend.coarse), scale_json(trend.fine)});
  j["unresolved_indices"] = samples.unresolved;
  j["verdict"] = to_string(trend.verdict);
  return j.dump(2) + "\n";
}

std::string samples_csv(const GeneratedSequence& samples) {
  std::string s;
  s.reserve(samples.values.size() * 20);
  char buf[40];
  for (double v : samples.values) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    s += buf;
  }
  return s;
}

int cmd_dist(const DistOptions& o, std::ostream& out, std::ostream&) {
  o.spec.validate();
  GeneratedSequence samples;
  const TwoScaleTrend trend = two_scale_trend(o.spec, o.thresholds, &samples);
  const std::string report = dist_report_json(o, trend, samples);
  if (o.out_path) write_file(*o.out_path, report);
  if (o.csv_path) write_file(*o.csv_path, samples_csv(samples));

  if (o.format == Format::json) {
    out << report;
  } else {
    std::string alphas;
    for (const auto& a : o.spec.alphas) alphas += (alphas.empty() ? "" : ";") + a.str();
    char line[512];
    std::snprintf(line, sizeof line, "%s alpha=%s k=%u m=%ld: D*(%llu) = %.6f, D*(%llu) = %.6f -> %s%s\n",
                  to_string(o.spec.variant).c_str(), alphas.c_str(), o.spec.k, o.spec.m,
                  static_cast<unsigned long long>(trend.coarse.N), trend.coarse.star_discrepancy,
                  static_cast<unsigned long long>(trend.fine.N), trend.fine.star_discrepancy,
                  to_string(trend.verdict).c_str(),
                  o.spec.within_theorem_hypothesis() ? "" : " [outside-theorem-hypothesis]");
    out << line;
  }
  return kExitOk;
}

}  // namespace floorpoly::cli
