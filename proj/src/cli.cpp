// Copyright 2026 The Chronodiag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronodiag/cli.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "chronodiag/atemporal.hpp"
#include "chronodiag/error.hpp"
#include "chronodiag/io.hpp"
#include "chronodiag/model.hpp"
#include "chronodiag/simulate.hpp"
#include "chronodiag/stochastic.hpp"
#include "chronodiag/temporal.hpp"

namespace chronodiag {
namespace {

// An Error tagged with the file it came from.
struct Failure {
  std::string file;
  Error error;
};

template <typename F>
auto with_file(const std::string& file, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Failure{file, e};
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoAdmissibleEvolution:
    case ErrorCode::NoCandidatesAtInstant:
    case ErrorCode::AllZeroJoints:
    case ErrorCode::ZeroAdmittedMass:
      return kExitNoEvolution;
    case ErrorCode::SearchSpaceTooLarge:
      return kExitLimit;
    default:
      return kExitValidation;
  }
}

std::string_view label_name(StateLabel l) {
  switch (l) {
    case StateLabel::Absorbing: return "absorbing";
    case StateLabel::ErgodicNonAbsorbing: return "ergodic";
    case StateLabel::Transient: return "transient";
  }
  return "?";
}

std::string_view source_name(InitialSource s) {
  switch (s) {
    case InitialSource::Model: return "model";
    case InitialSource::Induced: return "induced";
    case InitialSource::Uniform: return "uniform";
  }
  return "?";
}

std::string_view mode_name(ThresholdMode m) {
  return m == ThresholdMode::Global ? "global" : "per-component";
}

std::string_view criterion_name(ExplanationCriterion c) {
  return c == ExplanationCriterion::Abductive ? "abductive" : "consistency";
}

Json mode_names(const ComponentSpec& c, std::span<const std::size_t> modes) {
  Json out = Json::array();
  for (std::size_t m : modes) out.push_back(c.modes[m]);
  return out;
}

Json distribution_json(const ModeDistribution& d) {
  return Json(std::vector<double>(d.probabilities().begin(), d.probabilities().end()));
}

Json per_component(const SystemModel& model, std::span<const double> values) {
  Json j = Json::object();
  for (std::size_t c = 0; c < values.size(); ++c) j[model.component(c).id] = values[c];
  return j;
}

Json initials_json(const SystemModel& model, const ResolvedInitials& init) {
  Json out = Json::array();
  for (std::size_t c = 0; c < model.component_count(); ++c) {
    out.push_back({{"component", model.component(c).id},
                   {"source", source_name(init.sources[c])},
                   {"modes", model.component(c).modes},
                   {"probabilities", distribution_json(init.distributions[c])}});
  }
  return out;
}

Json trajectory_json(const SystemModel& model, std::span<const ModeAssignment> traj) {
  Json out = Json::array();
  for (const auto& w : traj) out.push_back({{"t", w.t}, {"assignment", assignment_to_json(model, w)}});
  return out;
}

Json config_json(const EngineConfig& config) {
  return {{"sigma", config.sigma},
          {"threshold_mode", mode_name(config.threshold_mode)},
          {"criterion", criterion_name(config.criterion)},
          {"revise", config.revise},
          {"candidate_cap", config.candidate_cap}};
}

void emit(std::ostream& out, const Json& report) { out << report.dump(2) << '\n'; }

// Options shared by several subcommands.
struct Options {
  std::string model_path;
  std::string second_path;
  std::string sigma = "0";
  ThresholdMode threshold_mode = ThresholdMode::Global;
  ExplanationCriterion criterion = ExplanationCriterion::Abductive;
  bool revise = false;
  std::uint64_t cap = kDefaultCandidateCap;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 10;
  std::vector<std::uint64_t> instants;
  std::size_t count = 1;
  bool stream_only = false;
};

EngineConfig make_config(const Options& o) {
  EngineConfig config;
  with_file("--sigma", [&] {
    config.sigma = parse_probability(Json(o.sigma), "--sigma");
    return 0;
  });
  config.threshold_mode = o.threshold_mode;
  config.criterion = o.criterion;
  config.revise = o.revise;
  config.candidate_cap = o.cap;
  with_file("command line", [&] {
    validate_config(config);
    return 0;
  });
  return config;
}

SystemModel read_model(const Options& o) {
  return with_file(o.model_path, [&] { return load_model(o.model_path); });
}

ObservationStream read_stream(const SystemModel& model, const std::string& path) {
  return with_file(path, [&] { return load_observations(model, path); });
}

// Initial distributions as the engine would resolve them: the model's own,
// else induced from the t=0 candidates when a stream starting at 0 is given,
// else uniform.
ResolvedInitials initials_for(const SystemModel& model, const ObservationStream* stream,
                              const EngineConfig& config) {
  if (stream && !stream->empty() && stream->entries().front().t == 0) {
    const auto candidates =
        solve_atemporal(model, stream->entries().front(), config.criterion, config.candidate_cap);
    return resolve_initials(model, candidates);
  }
  return resolve_initials(model);
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const SystemModel model = read_model(o);
  Json report{{"command", "validate"},
              {"model", {{"file", o.model_path},
                         {"valid", true},
                         {"components", model.component_count()},
                         {"rules", model.rules().size()},
                         {"atoms", model.atoms()}}}};
  if (!o.second_path.empty()) {
    const ObservationStream s = read_stream(model, o.second_path);
    report["observations"] = {{"file", o.second_path}, {"valid", true}, {"entries", s.size()}};
  }
  emit(out, report);
  err << "valid: " << o.model_path << (o.second_path.empty() ? "" : " and " + o.second_path) << '\n';
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  const SystemModel model = read_model(o);
  Json comps = Json::array();
  for (const auto& c : model.components()) {
    const StateClassification states = classify_states(c.matrix);
    Json jstates = Json::object();
    for (std::size_t m = 0; m < c.modes.size(); ++m) jstates[c.modes[m]] = label_name(states.labels[m]);
    Json ergodic = Json::array(), transient = Json::array();
    for (const auto& s : states.ergodic_sets) ergodic.push_back(mode_names(c, s));
    for (const auto& s : states.transient_sets) transient.push_back(mode_names(c, s));
    Json faults = Json::array();
    for (const auto& f : classify_faults(c)) {
      faults.push_back({{"mode", c.modes[f.mode]},
                        {"state", label_name(f.label)},
                        {"permanent", f.permanent},
                        {"transient", f.transient},
                        {"reversible", f.reversible},
                        {"irreversible", f.irreversible()}});
      err << c.modes[f.mode] << '(' << c.id << "): "
          << (f.permanent ? "permanent" : f.transient ? "transient" : "ergodic") << ", "
          << (f.reversible ? "reversible" : "irreversible") << '\n';
    }
    comps.push_back({{"id", c.id},
                     {"correct_mode", c.modes[c.correct_mode]},
                     {"states", std::move(jstates)},
                     {"ergodic_sets", std::move(ergodic)},
                     {"transient_sets", std::move(transient)},
                     {"faults", std::move(faults)}});
  }
  emit(out, {{"command", "classify"}, {"components", std::move(comps)}});
  return kExitOk;
}

int cmd_propagate(const Options& o, std::ostream& out, std::ostream& err) {
  const EngineConfig config = make_config(o);
  const SystemModel model = read_model(o);
  std::optional<ObservationStream> stream;
  if (!o.second_path.empty()) stream = read_stream(model, o.second_path);
  const ResolvedInitials init = initials_for(model, stream ? &*stream : nullptr, config);
  std::vector<std::uint64_t> instants = o.instants.empty() ? std::vector<std::uint64_t>{0} : o.instants;
  Json comps = Json::array();
  for (std::size_t c = 0; c < model.component_count(); ++c) {
    const auto& spec = model.component(c);
    Json rows = Json::array();
    for (auto t : instants) {
      const auto pi = propagate_distribution(init.distributions[c], spec.matrix, t);
      rows.push_back({{"t", t}, {"probabilities", distribution_json(pi)}});
    }
    comps.push_back({{"id", spec.id},
                     {"modes", spec.modes},
                     {"initial_source", source_name(init.sources[c])},
                     {"distributions", std::move(rows)}});
  }
  emit(out, {{"command", "propagate"}, {"instants", instants}, {"components", std::move(comps)}});
  err << "propagated " << model.component_count() << " components over " << instants.size()
      << " instants\n";
  return kExitOk;
}

int cmd_diagnose(const Options& o, std::ostream& out, std::ostream& err) {
  const EngineConfig config = make_config(o);
  DiagnosticProblem problem{read_model(o), {}, config};
  problem.observations = read_stream(problem.model, o.second_path);
  const TemporalResult r =
      with_file(o.second_path, [&] { return enumerate_temporal_diagnoses(problem); });
  const SystemModel& model = problem.model;

  Json candidates = Json::array();
  for (const auto& layer : r.candidates) {
    Json ws = Json::array();
    for (const auto& w : layer) ws.push_back(assignment_to_json(model, w));
    candidates.push_back({{"t", layer.front().t}, {"assignments", std::move(ws)}});
  }
  Json edges = Json::array();
  for (const auto& e : r.edges) {
    Json je{{"from_t", r.instants[e.layer - 1]},
            {"to_t", r.instants[e.layer]},
            {"from", e.from},
            {"to", e.to},
            {"conditional", e.conditional},
            {"component_factors", per_component(model, e.component_factors)}};
    if (e.revised_conditional) {
      je["revised_conditional"] = *e.revised_conditional;
      je["revised_component_factors"] = per_component(model, e.revised_component_factors);
    }
    je["admissible"] = e.admissible;
    edges.push_back(std::move(je));
  }
  Json diagnoses = Json::array();
  for (std::size_t i = 0; i < r.diagnoses.size(); ++i) {
    const auto& d = r.diagnoses[i];
    Json jd{{"rank", i + 1},
            {"trajectory", trajectory_json(model, d.trajectory)},
            {"prior", d.prior},
            {"step_conditionals", d.step_conditionals},
            {"joint_probability", d.joint_probability}};
    if (d.revised_joint) {
      jd["revised_step_conditionals"] = d.revised_step_conditionals;
      jd["revised_joint"] = *d.revised_joint;
    }
    diagnoses.push_back(std::move(jd));
  }
  Json report{{"command", "diagnose"},
              {"config", config_json(config)},
              {"instants", r.instants},
              {"initial_distributions", initials_json(model, r.initials)},
              {"candidates", std::move(candidates)},
              {"edges", std::move(edges)},
              {"diagnoses", std::move(diagnoses)}};
  if (config.revise) {
    Json rev = Json::array();
    for (const auto& lr : r.revision) {
      Json admitted = Json::object(), dists = Json::object();
      for (std::size_t c = 0; c < model.component_count(); ++c) {
        admitted[model.component(c).id] = mode_names(model.component(c), lr.admitted[c]);
        dists[model.component(c).id] = distribution_json(lr.distributions[c]);
      }
      rev.push_back({{"t", lr.t},
                     {"normalization_factor", lr.normalization},
                     {"distributions", std::move(dists)},
                     {"admitted", std::move(admitted)},
                     {"component_factors", per_component(model, lr.component_factors)}});
    }
    report["revision"] = std::move(rev);
  }
  emit(out, report);

  err << r.diagnoses.size() << " temporal diagnos" << (r.diagnoses.size() == 1 ? "is" : "es")
      << " over " << r.instants.size() << " relevant instants\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(r.diagnoses.size(), 5); ++i) {
    const auto& d = r.diagnoses[i];
    err << "  #" << i + 1 << " joint=" << d.joint_probability << ' ';
    for (const auto& w : d.trajectory) err << "t=" << w.t << format_assignment(model, w) << ' ';
    err << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const SystemModel model = read_model(o);
  const ResolvedInitials init = resolve_initials(model);
  std::vector<TimePoint> instants = o.instants;
  if (instants.empty()) {
    for (TimePoint t = 0; t <= o.horizon; ++t) instants.push_back(t);
  }
  std::sort(instants.begin(), instants.end());
  instants.erase(std::unique(instants.begin(), instants.end()), instants.end());
  const auto samples = sample_trajectories(model, init.distributions, o.horizon, o.seed, o.count);
  Json trajs = Json::array();
  for (const auto& s : samples) {
    const ObservationStream stream = with_file("--instants", [&] {
      return generate_observation_stream(s, model, instants);
    });
    const Json obs = observations_to_json(to_decl(model, stream));
    if (o.stream_only) {
      emit(out, obs);
      err << "stream for seed " << s.seed << " with " << stream.size() << " entries\n";
      return kExitOk;
    }
    Json modes = Json::object();
    for (std::size_t c = 0; c < model.component_count(); ++c) {
      Json seq = Json::array();
      for (std::size_t m : s.modes[c]) seq.push_back(model.component(c).modes[m]);
      modes[model.component(c).id] = std::move(seq);
    }
    trajs.push_back({{"seed", s.seed}, {"modes", std::move(modes)}, {"observations", obs}});
  }
  emit(out, {{"command", "simulate"},
             {"rng", kRngAlgorithm},
             {"seed", o.seed},
             {"horizon", o.horizon},
             {"count", o.count},
             {"initial_distributions", initials_json(model, init)},
             {"trajectories", std::move(trajs)}});
  err << "sampled " << samples.size() << " trajectories of horizon " << o.horizon << '\n';
  return kExitOk;
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream& err) {
  const EngineConfig config = make_config(o);
  const SystemModel model = read_model(o);
  const auto trajectories = with_file(o.second_path, [&] {
    auto t = trajectories_from_json(model, read_json_file(o.second_path));
    for (const auto& traj : t) {
      for (std::size_t k = 1; k < traj.size(); ++k) {
        if (traj[k].t <= traj[k - 1].t) {
          throw Error(ErrorCode::NonIncreasingInstants, "t=" + std::to_string(traj[k].t),
                      "trajectory instants must be strictly increasing");
        }
      }
    }
    return t;
  });
  std::vector<ModeAssignment> starts;
  bool all_at_zero = !trajectories.empty();
  for (const auto& traj : trajectories) {
    all_at_zero = all_at_zero && traj.front().t == 0;
    if (std::find(starts.begin(), starts.end(), traj.front()) == starts.end()) starts.push_back(traj.front());
  }
  const ResolvedInitials init =
      all_at_zero ? resolve_initials(model, starts) : resolve_initials(model);

  std::vector<std::pair<TemporalDiagnosis, std::vector<bool>>> rows;
  for (const auto& traj : trajectories) {
    TemporalDiagnosis d;
    d.trajectory = traj;
    d.prior = prior_probability(traj.front(), init.distributions, model);
    std::vector<bool> admissible;
    for (std::size_t k = 1; k < traj.size(); ++k) {
      d.step_conditionals.push_back(conditional_probability(traj[k - 1], traj[k], model));
      admissible.push_back(admissible_step(traj[k - 1], traj[k], model, config));
    }
    d.joint_probability = joint_probability(traj, init.distributions, model);
    rows.emplace_back(std::move(d), std::move(admissible));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return ranks_before(a.first, b.first); });
  Json table = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [d, adm] = rows[i];
    table.push_back({{"rank", i + 1},
                     {"trajectory", trajectory_json(model, d.trajectory)},
                     {"prior", d.prior},
                     {"step_conditionals", d.step_conditionals},
                     {"step_admissible", adm},
                     {"admissible", std::all_of(adm.begin(), adm.end(), [](bool b) { return b; })},
                     {"joint_probability", d.joint_probability}});
  }
  emit(out, {{"command", "rank"},
             {"config", config_json(config)},
             {"initial_distributions", initials_json(model, init)},
             {"trajectories", std::move(table)}});
  err << "ranked " << rows.size() << " trajectories\n";
  return kExitOk;
}

void report_failure(const Failure& f, std::ostream& out, std::ostream& err) {
  emit(out, {{"error",
              {{"code", to_string(f.error.code())},
               {"file", f.file},
               {"element", f.error.element()},
               {"message", f.error.what()}}}});
  err << "error: " << f.file << ": " << f.error.element() << ": " << f.error.what() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal model-based diagnosis over per-component Markov chains", "chronodiag"};
  app.require_subcommand(1);
  Options o;

  const std::map<std::string, ThresholdMode> threshold_modes{
      {"global", ThresholdMode::Global}, {"per-component", ThresholdMode::PerComponent}};
  const std::map<std::string, ExplanationCriterion> criteria{
      {"abductive", ExplanationCriterion::Abductive},
      {"consistency", ExplanationCriterion::ConsistencyBased}};

  auto add_engine_flags = [&](CLI::App* sub) {
    sub->add_option("--sigma", o.sigma, "Plausibility threshold (decimal or a/b)");
    sub->add_option("--threshold-mode", o.threshold_mode, "global | per-component")
        ->transform(CLI::CheckedTransformer(threshold_modes, CLI::ignore_case));
    sub->add_option("--criterion", o.criterion, "abductive | consistency")
        ->transform(CLI::CheckedTransformer(criteria, CLI::ignore_case));
    sub->add_option("--cap", o.cap, "Maximum assignments / diagnoses")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check a model and optional observation file");
  validate->add_option("model", o.model_path)->required();
  validate->add_option("observations", o.second_path);

  auto* classify = app.add_subcommand("classify", "State and fault classification per component");
  classify->add_option("model", o.model_path)->required();

  auto* propagate = app.add_subcommand("propagate", "Mode distributions at the requested instants");
  propagate->add_option("model", o.model_path)->required();
  propagate->add_option("observations", o.second_path);
  propagate->add_option("--instants", o.instants)->delimiter(',');
  propagate->add_option("--criterion", o.criterion)
      ->transform(CLI::CheckedTransformer(criteria, CLI::ignore_case));

  auto* diagnose = app.add_subcommand("diagnose", "Ranked temporal diagnoses");
  diagnose->add_option("model", o.model_path)->required();
  diagnose->add_option("observations", o.second_path)->required();
  add_engine_flags(diagnose);
  diagnose->add_flag("--revise", o.revise, "Renormalize against the admitted hypotheses");

  auto* simulate = app.add_subcommand("simulate", "Sample trajectories and observation streams");
  simulate->add_option("model", o.model_path)->required();
  simulate->add_option("--seed", o.seed);
  simulate->add_option("--horizon", o.horizon);
  simulate->add_option("--instants", o.instants)->delimiter(',');
  simulate->add_option("--count", o.count)->check(CLI::PositiveNumber);
  simulate->add_flag("--stream-only", o.stream_only, "Print only the first observation stream");

  auto* rank = app.add_subcommand("rank", "Joint probabilities of explicit trajectories");
  rank->add_option("model", o.model_path)->required();
  rank->add_option("trajectories", o.second_path)->required();
  add_engine_flags(rank);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*validate) return cmd_validate(o, out, err);
    if (*classify) return cmd_classify(o, out, err);
    if (*propagate) return cmd_propagate(o, out, err);
    if (*diagnose) return cmd_diagnose(o, out, err);
    if (*simulate) return cmd_simulate(o, out, err);
    if (*rank) return cmd_rank(o, out, err);
  } catch (const Failure& f) {
    report_failure(f, out, err);
    return exit_code_for(f.error.code());
  } catch (const Error& e) {
    report_failure(Failure{o.model_path, e}, out, err);
    return exit_code_for(e.code());
  }
  return kExitValidation;
}

}  // namespace chronodiag
