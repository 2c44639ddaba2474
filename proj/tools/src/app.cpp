#include "floorpoly_cli/app.hpp"

#include "floorpoly/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>

namespace floorpoly::cli {

namespace {

const std::map<std::string, Format> kFormats{{"text", Format::text}, {"json", Format::json}};
const std::map<std::string, WitnessTarget> kTargets{
    {"g-k", WitnessTarget::g_k}, {"p-hat", WitnessTarget::p_hat}, {"uniform-control", WitnessTarget::uniform_control}};

template <class T>
T env_or(const char* name, T fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  const std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(std::string(name) + " must be a positive integer, got '" + s + "'");
  const auto v = std::stoll(s);
  if (v <= 0) throw std::invalid_argument(std::string(name) + " must be positive");
  return static_cast<T>(v);
}

void add_format(CLI::App* cmd, Format& f) {
  cmd->add_option("--format", f, "Output format")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nested-floor product identities, partition polynomials and equidistribution experiments", "floorpoly"};
  app.set_version_flag("--version", std::string(kLibraryVersion));
  app.require_subcommand(1);

  ExpandOptions expand;
  auto* c_expand = app.add_subcommand("expand", "Print the product identity for n factors");
  c_expand->add_option("n", expand.n, "Number of factors")->required();
  c_expand->add_flag("--certify", expand.certify, "Also run the symbolic cancellation certificate (n <= 9)");
  add_format(c_expand, expand.format);

  VerifyOptions verify;
  auto* c_verify = app.add_subcommand("verify", "Run an exact verification suite on random rationals");
  c_verify->add_option("suite", verify.suite, "identity | partition | lemma1")
      ->required()
      ->check(CLI::IsMember({"identity", "partition", "lemma1"}));
  c_verify->add_option("--n", verify.n, "Identity length or power degree");
  c_verify->add_option("--k", verify.k, "Chain depth for the lemma1 suite");
  c_verify->add_option("--l", verify.l, "Modulus l for the lemma1 suite");
  c_verify->add_option("--trials", verify.trials, "Random inputs to test");
  c_verify->add_option("--seed", verify.seed, "Master seed");
  add_format(c_verify, verify.format);

  FklOptions fkl;
  auto* c_fkl = app.add_subcommand("fkl", "Evaluate f_{k,l} at a rational point of [0,1)^{k-1}");
  c_fkl->add_option("--k", fkl.k, "k")->required();
  c_fkl->add_option("--l", fkl.l, "l")->required();
  c_fkl->add_option("--y", fkl.y, "Components y_1..y_{k-1} as p/q (comma separated or repeated)")->delimiter(',');
  add_format(c_fkl, fkl.format);

  WitnessOptions witness;
  std::optional<unsigned> witness_jobs;
  auto* c_witness = app.add_subcommand("witness", "Monte Carlo Fourier coefficient of g_k or p-hat_k mod 1");
  c_witness->add_option("--k", witness.k, "k >= 3");
  c_witness->add_option("--m", witness.m, "Integer multiplier");
  c_witness->add_option("--samples", witness.samples, "Sample count (>= 100000)");
  c_witness->add_option("--seed", witness.seed, "Master seed");
  c_witness->add_option("--target", witness.target, "g-k | p-hat | uniform-control")
      ->transform(CLI::CheckedTransformer(kTargets, CLI::ignore_case));
  c_witness->add_option("--jobs", witness_jobs, "Worker threads");
  add_format(c_witness, witness.format);

  DistOptions dist;
  std::string variant = "power-chain";
  std::vector<std::string> alphas;
  std::uint64_t points = 100000;
  std::optional<long> cap;
  std::optional<unsigned> dist_jobs;
  std::string out_path;
  std::string csv_path;
  auto* c_dist = app.add_subcommand("dist", "Distribution mod 1 of a nested-floor sequence at N/10 and N points");
  c_dist->add_option("--variant", variant, "nested-alpha | floored-product | power-chain | theorem-combination");
  c_dist->add_option("--alpha", alphas, "rat:p/q, root:b,d or pi (repeat for several)")->required();
  c_dist->add_option("--k", dist.spec.k, "Chain depth");
  c_dist->add_option("--m", dist.spec.m, "Multiplier for theorem-combination");
  c_dist->add_option("--n", points, "Number of points N");
  c_dist->add_option("--precision-cap", cap, "Bits of working precision before a floor is declared unresolvable");
  c_dist->add_option("--jobs", dist_jobs, "Worker threads");
  c_dist->add_option("--uniform-ceiling", dist.thresholds.uniform_ceiling, "D* ceiling for a uniform verdict");
  c_dist->add_option("--nonuniform-floor", dist.thresholds.nonuniform_floor, "D* floor for a nonuniform verdict");
  c_dist->add_option("--out", out_path, "Write the JSON report here");
  c_dist->add_option("--csv", csv_path, "Write the raw fractional values here");
  add_format(c_dist, dist.format);

  std::vector<const char*> argv{"floorpoly"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_expand) return cmd_expand(expand, out, err);
    if (*c_verify) return cmd_verify(verify, out, err);
    if (*c_fkl) return cmd_fkl(fkl, out, err);
    if (*c_witness) {
      witness.jobs = witness_jobs.value_or(env_or<unsigned>("FLOORPOLY_JOBS", 1));
      return cmd_witness(witness, out, err);
    }
    if (*c_dist) {
      dist.spec.variant = parse_variant(variant);
      for (const auto& a : alphas) dist.spec.alphas.push_back(AlphaSpec::parse(a));
      dist.spec.N = points;
      dist.spec.precision_cap = cap.value_or(env_or<long>("FLOORPOLY_PRECISION_CAP", kDefaultPrecisionCap));
      dist.spec.jobs = dist_jobs.value_or(env_or<unsigned>("FLOORPOLY_JOBS", 1));
      if (!out_path.empty()) dist.out_path = out_path;
      if (!csv_path.empty()) dist.csv_path = csv_path;
      return cmd_dist(dist, out, err);
    }
  } catch (const PrecisionFailure& e) {
    err << "precision failure: " << e.what() << "\n";
    return kExitPrecisionFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}

}  // namespace floorpoly::cli
