#include "gasloss/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gasloss/approx.hpp"
#include "gasloss/error.hpp"
#include "gasloss/factorize.hpp"
#include "gasloss/generators.hpp"
#include "gasloss/hist.hpp"
#include "gasloss/io.hpp"
#include "gasloss/model.hpp"
#include "gasloss/partition.hpp"
#include "json.hpp"

namespace gasloss {
namespace {

using ojson = nlohmann::ordered_json;

// Human-readable reports use 12 significant digits; --json keeps full precision.
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string named(const std::vector<std::string>& names, const Eigen::VectorXd& v) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += ' ';
    s += names[static_cast<std::size_t>(i)] + "=" + num(v(i));
  }
  return s;
}

ojson to_json(const Eigen::VectorXd& v) {
  ojson a = ojson::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ojson to_json(const Eigen::MatrixXd& m) {
  ojson a = ojson::array();
  for (Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Eigen::VectorXd(m.row(i).transpose())));
  return a;
}

std::vector<std::string> group_names(const ResourceInstance& inst, const ResourceGroup& g) {
  std::vector<std::string> names;
  for (Index j : g) names.push_back(inst.resource_names()[static_cast<std::size_t>(j)]);
  return names;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NumericalFailure: return kExitNumericalFailure;
    case ErrorCode::TooManyResources: return kExitCapabilityLimit;
    default: return kExitInputError;
  }
}

struct Globals {
  bool json = false;
  bool oracle = false;
  std::vector<std::string> exclude;
  std::uint64_t seed = 1;
};

class Session {
 public:
  Session(const Globals& globals, std::ostream& out, std::ostream& err)
      : g_(globals), out_(out), err_(err) {}

  ResourceInstance load(const std::string& path) {
    const RawInstance raw = load_instance_file(path);
    ResourceInstance inst = validate_instance(raw, g_.exclude);
    for (const auto& w : inst.warnings()) err_ << "warning: " << w << "\n";
    return inst;
  }

  ojson header(const char* command, const ResourceInstance& inst) const {
    ojson doc = ojson::object();
    doc["command"] = command;
    ojson summary = ojson::object();
    summary["operations"] = inst.operation_names();
    summary["resources"] = inst.resource_names();
    summary["excluded_resources"] = inst.excluded_resources();
    summary["dropped_operations"] = inst.dropped_operations();
    doc["instance"] = std::move(summary);
    doc["warnings"] = inst.warnings();
    return doc;
  }

  void emit(const ojson& doc) { out_ << doc.dump(2) << "\n"; }

  int measure(const std::string& path) {
    const ResourceInstance inst = load(path);
    const GasMeasure g = minimal_gas_measure(inst);
    const std::vector<Index> binding = binding_resources(inst);
    if (g_.json) {
      ojson doc = header("measure", inst);
      doc["gas"] = to_json(g.costs);
      ojson b = ojson::array();
      for (Index j : binding) b.push_back(inst.resource_names()[static_cast<std::size_t>(j)]);
      doc["binding_resource"] = std::move(b);
      emit(doc);
      return kExitOk;
    }
    out_ << "minimal gas measure (" << inst.operation_count() << " operations, "
         << inst.resource_count() << " resources)\n";
    out_ << std::left << std::setw(16) << "operation" << std::setw(20) << "gas"
         << "binding resource\n";
    for (Index i = 0; i < g.size(); ++i) {
      out_ << std::left << std::setw(16) << inst.operation_names()[static_cast<std::size_t>(i)]
           << std::setw(20) << num(g.costs(i))
           << inst.resource_names()[static_cast<std::size_t>(binding[static_cast<std::size_t>(i)])]
           << "\n";
    }
    return kExitOk;
  }

  int approx(const std::string& path) {
    const ResourceInstance inst = load(path);
    const ApproxReport rep = approximability(inst, g_.oracle);
    const double witness_gas = gas_of(rep.measure, rep.witness);
    if (g_.json) {
      ojson doc = header("approx", inst);
      doc["gas"] = to_json(rep.measure.costs);
      doc["alpha"] = rep.alpha;
      doc["game_value"] = rep.game.value;
      doc["row_strategy"] = to_json(rep.game.row_strategy);
      doc["column_strategy"] = to_json(rep.game.column_strategy);
      doc["witness"] = to_json(rep.witness.counts);
      doc["witness_gas"] = witness_gas;
      doc["witness_feasible"] = is_feasible(inst, rep.witness);
      if (rep.oracle_alpha) {
        doc["oracle_alpha"] = *rep.oracle_alpha;
        doc["oracle_gap"] = std::abs(*rep.oracle_alpha - rep.alpha);
      }
      emit(doc);
      return kExitOk;
    }
    out_ << "alpha            " << num(rep.alpha) << "\n";
    out_ << "game value       " << num(rep.game.value) << "\n";
    out_ << "gas measure      " << named(inst.operation_names(), rep.measure.costs) << "\n";
    out_ << "row strategy     " << named(inst.operation_names(), rep.game.row_strategy) << "\n";
    out_ << "column strategy  " << named(inst.resource_names(), rep.game.column_strategy) << "\n";
    out_ << "witness block    " << named(inst.operation_names(), rep.witness.counts) << "\n";
    out_ << "witness gas      " << num(witness_gas) << "\n";
    if (rep.oracle_alpha) {
      out_ << "oracle alpha     " << num(*rep.oracle_alpha) << "\n";
      out_ << "oracle gap       " << num(std::abs(*rep.oracle_alpha - rep.alpha)) << "\n";
    }
    return kExitOk;
  }

  int partition(const std::string& path, Index k, const std::string& mode) {
    const ResourceInstance inst = load(path);
    const PartitionPlan plan =
        mode == "exact" ? optimal_partition_exact(inst, k) : optimal_partition_greedy(inst, k);
    if (g_.json) {
      ojson doc = header("partition", inst);
      doc["mode"] = mode;
      doc["k"] = k;
      doc["loss"] = plan.loss;
      ojson groups = ojson::array();
      for (std::size_t r = 0; r < plan.groups.size(); ++r) {
        ojson g = ojson::object();
        g["resources"] = group_names(inst, plan.groups[r]);
        g["loss"] = plan.group_losses(static_cast<Index>(r));
        g["gas"] = to_json(plan.group_measures[r].costs);
        groups.push_back(std::move(g));
      }
      doc["groups"] = std::move(groups);
      emit(doc);
      return kExitOk;
    }
    out_ << "loss             " << num(plan.loss) << "\n";
    for (std::size_t r = 0; r < plan.groups.size(); ++r) {
      out_ << "group " << (r + 1) << "  loss " << num(plan.group_losses(static_cast<Index>(r)))
           << "  resources";
      for (const auto& name : group_names(inst, plan.groups[r])) out_ << ' ' << name;
      out_ << "\n";
    }
    return kExitOk;
  }

  int factorize(const std::string& path, Index k, const std::string& mode, int rounds) {
    const ResourceInstance inst = load(path);
    const NormalizedInstance norm = normalize(inst);
    FactorReport rep;
    if (mode == "alternate") {
      rep = alternating_factorization(norm, k, rounds);
    } else {
      const PartitionPlan plan = inst.resource_count() <= kExactEnumerationLimit
                                     ? optimal_partition_exact(inst, k)
                                     : optimal_partition_greedy(inst, k);
      rep = factor_loss(norm, partition_to_factorization(inst, plan));
    }
    for (Index l : rep.empty_dimensions) {
      err_ << "warning: dimension " << (l + 1) << " charges no operation and was skipped\n";
    }
    const Factorization& f = rep.factorization;
    if (g_.json) {
      ojson doc = header("factorize", inst);
      doc["mode"] = mode;
      doc["k"] = k;
      doc["A"] = to_json(f.A);
      doc["R"] = to_json(f.R);
      doc["dimension_values"] = to_json(rep.dimension_values);
      doc["dimension_oracle"] = to_json(rep.dimension_oracle);
      doc["alpha"] = rep.alpha;
      doc["represents"] = rep.represents;
      doc["upper_bounding"] = is_upper_bounding(norm, f);
      doc["rounds"] = rep.rounds;
      emit(doc);
      return kExitOk;
    }
    out_ << "alpha            " << num(rep.alpha) << "\n";
    out_ << "represents       " << (rep.represents ? "yes" : "no") << "\n";
    out_ << "upper bounding   " << (is_upper_bounding(norm, f) ? "yes" : "no") << "\n";
    if (mode == "alternate") out_ << "rounds           " << rep.rounds << "\n";
    for (Index l = 0; l < f.dimensions(); ++l) {
      out_ << "dimension " << (l + 1) << "  game value " << num(rep.dimension_values(l))
           << "  loss " << num(1.0 / rep.dimension_values(l)) << "\n";
    }
    out_ << "A (operations x dimensions)\n";
    for (Index i = 0; i < f.A.rows(); ++i) {
      out_ << "  " << std::left << std::setw(14) << inst.operation_names()[static_cast<std::size_t>(i)];
      for (Index l = 0; l < f.A.cols(); ++l) out_ << ' ' << std::setw(16) << num(f.A(i, l));
      out_ << "\n";
    }
    out_ << "R (dimensions x resources)\n";
    for (Index l = 0; l < f.R.rows(); ++l) {
      out_ << "  " << std::left << std::setw(14) << ("dim" + std::to_string(l + 1));
      for (Index j = 0; j < f.R.cols(); ++j) out_ << ' ' << std::setw(16) << num(f.R(l, j));
      out_ << "\n";
    }
    return kExitOk;
  }

  int hist(const std::string& path, const std::string& profile, const std::string& low,
           const std::string& high) {
    const ResourceInstance inst = load(path);
    const bool range = profile.empty();
    if (range && (low.empty() || high.empty())) {
      throw Error(ErrorCode::ParseError, "hist: give --profile, or both --low and --high");
    }
    HistReport rep;
    if (range) {
      rep = hist_loss_range(inst, load_profile_file(low, inst), load_profile_file(high, inst));
    } else {
      rep = hist_loss(inst, FrequencyProfile::from_weights(load_profile_file(profile, inst)));
    }
    const std::string& best = inst.resource_names()[static_cast<std::size_t>(rep.best_reply)];
    if (g_.json) {
      ojson doc = header("hist", inst);
      doc["mode"] = range ? "range" : "point";
      doc["frequencies"] = to_json(rep.frequencies);
      doc["strategy"] = to_json(rep.strategy);
      doc["column_payoffs"] = to_json(rep.column_payoffs);
      doc["nu_hist"] = rep.nu;
      doc["alpha_hist"] = rep.alpha;
      doc["best_reply"] = best;
      emit(doc);
      return kExitOk;
    }
    out_ << "alpha_hist       " << num(rep.alpha) << "\n";
    out_ << "nu_hist          " << num(rep.nu) << "\n";
    out_ << "best reply       " << best << "\n";
    out_ << (range ? "worst frequencies" : "frequencies     ") << ' '
         << named(inst.operation_names(), rep.frequencies) << "\n";
    out_ << "strategy         " << named(inst.operation_names(), rep.strategy) << "\n";
    out_ << "column payoffs   " << named(inst.resource_names(), rep.column_payoffs) << "\n";
    return kExitOk;
  }

  int write_instance(const RawInstance& raw, const std::string& path) {
    const std::string text = serialize_instance(raw);
    if (path.empty() || path == "-") {
      out_ << text;
      return kExitOk;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write " + path);
    file << text;
    return kExitOk;
  }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
};

std::vector<std::int64_t> parse_multiset(const std::string& text) {
  std::vector<std::int64_t> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "--set: '" + item + "' is not an integer");
    }
  }
  return values;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Throughput lost by pricing multi-dimensional block resources with fewer gas "
               "dimensions",
               "gasloss"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Emit a JSON report on stdout");
  app.add_flag("--oracle", g.oracle, "Cross-check alpha with the direct LP");
  app.add_option("--exclude-resources", g.exclude, "Resources to treat as non-congesting")
      ->delimiter(',');
  app.add_option("--seed", g.seed, "Seed for the random generator");

  std::string instance_path;
  auto* measure = app.add_subcommand("measure", "Minimal single-dimensional gas measure");
  measure->add_option("instance", instance_path, "Instance file")->required();

  auto* approx = app.add_subcommand("approx", "Worst-case loss of the minimal gas measure");
  approx->add_option("instance", instance_path, "Instance file")->required();

  Index k = 1;
  std::string partition_mode = "exact";
  auto* part = app.add_subcommand("partition", "Best grouping of resources into k gas dimensions");
  part->add_option("instance", instance_path, "Instance file")->required();
  part->add_option("-k,--k", k, "Number of groups")->required()->check(CLI::PositiveNumber);
  part->add_option("--mode", partition_mode, "exact or greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));

  std::string factor_mode = "from-partition";
  int rounds = 10;
  auto* fact = app.add_subcommand("factorize", "k-dimensional measure from a factorization");
  fact->add_option("instance", instance_path, "Instance file")->required();
  fact->add_option("-k,--k", k, "Number of dimensions")->required()->check(CLI::PositiveNumber);
  fact->add_option("--mode", factor_mode, "from-partition or alternate")
      ->check(CLI::IsMember({"from-partition", "alternate"}));
  fact->add_option("--rounds", rounds, "Alternating rounds")->check(CLI::PositiveNumber);

  std::string profile, low, high;
  auto* hist = app.add_subcommand("hist", "Loss under a historical operation mix");
  hist->add_option("instance", instance_path, "Instance file")->required();
  hist->add_option("--profile", profile, "Operation weights (JSON object)");
  hist->add_option("--low", low, "Lower frequency bounds (JSON object)");
  hist->add_option("--high", high, "Upper frequency bounds (JSON object)");

  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Write an instance file");
  gen->require_subcommand(1);
  std::string multiset;
  double epsilon = 0.0;
  auto* gen_ecp = gen->add_subcommand("ecp", "Equal-cardinality-partition reduction instance");
  gen_ecp->add_option("--set", multiset, "Comma-separated positive integers")->required();
  gen_ecp->add_option("--epsilon", epsilon, "Perturbation, 0 < epsilon < 1/sum")->required();
  gen_ecp->add_option("-o,--out", out_path, "Output path (default stdout)");
  int ops = 6, resources = 4;
  double density = 1.0;
  auto* gen_random = gen->add_subcommand("random", "Seeded random instance");
  gen_random->add_option("--ops", ops, "Operations")->check(CLI::PositiveNumber);
  gen_random->add_option("--resources", resources, "Resources")->check(CLI::PositiveNumber);
  gen_random->add_option("--density", density, "Probability that an entry is nonzero");
  gen_random->add_option("-o,--out", out_path, "Output path (default stdout)");
  std::string preset;
  auto* gen_preset = gen->add_subcommand("preset", "Bundled example instance");
  gen_preset->add_option("name", preset, "table1, table3 or figure1")->required();
  gen_preset->add_option("-o,--out", out_path, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  Session session(g, out, err);
  try {
    if (*measure) return session.measure(instance_path);
    if (*approx) return session.approx(instance_path);
    if (*part) return session.partition(instance_path, k, partition_mode);
    if (*fact) return session.factorize(instance_path, k, factor_mode, rounds);
    if (*hist) return session.hist(instance_path, profile, low, high);
    if (*gen_ecp) return session.write_instance(generate_ecp(parse_multiset(multiset), epsilon).raw, out_path);
    if (*gen_random) {
      return session.write_instance(random_instance(ops, resources, density, g.seed), out_path);
    }
    if (*gen_preset) return session.write_instance(preset_instance(preset), out_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace gasloss
