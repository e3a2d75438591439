// Copyright 2026 The MrAP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrap/propagation.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "mrap/errors.h"
#include "mrap/model_dump.h"
#include "parallel.h"

namespace mrap {
namespace {

bool IsTarget(const AttributeEntry& e) { return e.status != Status::kObserved; }

// Incoming paths of every entry in CSR form, with model parameters copied
// next to the source index for the inner loop.
struct Plan {
  struct Term {
    std::size_t source;
    double eta;
    double tau;
    double weight;
  };
  std::vector<std::size_t> offsets;
  std::vector<Term> terms;

  std::span<const Term> into(std::size_t entry) const {
    return std::span<const Term>(terms).subspan(
        offsets[entry], offsets[entry + 1] - offsets[entry]);
  }
};

Plan CompilePlan(const KnowledgeGraph& graph, const AttributeTable& attrs,
                 const ModelRegistry& registry,
                 const PropagationConfig& config) {
  Plan plan;
  plan.offsets.reserve(attrs.size() + 1);
  plan.offsets.push_back(0);
  for (std::size_t e = 0; e < attrs.size(); ++e) {
    for (const IncomingPath& p :
         IncomingPaths(graph, attrs, registry, e, config)) {
      plan.terms.push_back(
          {p.source, p.model->eta, p.model->tau, p.model->weight});
    }
    plan.offsets.push_back(plan.terms.size());
  }
  return plan;
}

double EntryLoss(const Plan& plan, std::span<const double> values,
                 std::size_t entry) {
  double loss = 0.0;
  for (const Plan::Term& t : plan.into(entry)) {
    const double r = values[entry] - (t.eta * values[t.source] + t.tau);
    loss += t.weight * r * r;
  }
  return loss;
}

// Per-type loss, summed in entry order so the result is independent of the
// worker count.
std::vector<double> LossByType(const Plan& plan, const AttributeTable& attrs,
                               std::span<const double> values,
                               unsigned threads) {
  std::vector<double> per_entry(attrs.size(), 0.0);
  internal::ParallelFor(attrs.size(), threads,
                        [&](std::size_t begin, std::size_t end) {
                          for (std::size_t e = begin; e < end; ++e) {
                            per_entry[e] = EntryLoss(plan, values, e);
                          }
                        });
  std::vector<double> by_type(attrs.num_types(), 0.0);
  for (std::size_t e = 0; e < attrs.size(); ++e) {
    by_type[attrs.entry(e).attr.index()] += per_entry[e];
  }
  return by_type;
}

}  // namespace

void PropagationConfig::Validate() const {
  if (!(damping > 0.0) || damping > 1.0) {
    throw InvalidArgument("damping must lie in (0, 1]");
  }
  if (!(conv_frac > 0.0)) {
    throw InvalidArgument("conv_frac must be positive");
  }
  if (max_iters < 1) {
    throw InvalidArgument("max_iters must be at least 1");
  }
}

bool PathAllowed(const PathKey& key, const PropagationConfig& config) {
  if (config.no_inner && key.is_inner()) return false;
  if (config.no_cross && key.is_cross()) return false;
  return true;
}

std::vector<IncomingPath> IncomingPaths(const KnowledgeGraph& graph,
                                        const AttributeTable& attrs,
                                        const ModelRegistry& registry,
                                        std::size_t target,
                                        const PropagationConfig& config) {
  std::vector<IncomingPath> paths;
  const AttributeEntry& y = attrs.entry(target);
  for (const Neighbor& nb : graph.neighbors(y.entity)) {
    const std::size_t first = attrs.FirstIndexOf(nb.node);
    const auto sources = attrs.EntriesOf(nb.node);
    for (std::size_t k = 0; k < sources.size(); ++k) {
      const PathKey key = PathKey::Relational(y.attr, sources[k].attr, nb.link);
      if (!PathAllowed(key, config)) continue;
      if (const RegressionModel* m = registry.Find(key)) {
        paths.push_back({first + k, m});
      }
    }
  }
  if (!config.no_inner && !config.no_cross) {
    const std::size_t first = attrs.FirstIndexOf(y.entity);
    const auto siblings = attrs.EntriesOf(y.entity);
    for (std::size_t k = 0; k < siblings.size(); ++k) {
      if (siblings[k].attr == y.attr) continue;
      if (const RegressionModel* m =
              registry.Find(PathKey::Inner(y.attr, siblings[k].attr))) {
        paths.push_back({first + k, m});
      }
    }
  }
  return paths;
}

std::vector<Message> CollectMessages(std::span<const double> values,
                                     const KnowledgeGraph& graph,
                                     const AttributeTable& attrs,
                                     const ModelRegistry& registry,
                                     AttrKey target,
                                     const PropagationConfig& config) {
  const auto index = attrs.Find(target);
  if (!index) throw InvalidArgument("target is not a tracked attribute entry");
  if (values.size() != attrs.size()) {
    throw InvalidArgument("value buffer does not match the attribute table");
  }
  std::vector<Message> messages;
  for (const IncomingPath& p :
       IncomingPaths(graph, attrs, registry, *index, config)) {
    messages.push_back({target, Predict(*p.model, values[p.source]),
                        p.model->weight, p.model->key,
                        attrs.entry(p.source).entity});
  }
  return messages;
}

std::optional<double> Aggregate(std::span<const Message> messages) {
  if (messages.empty()) return std::nullopt;
  double numerator = 0.0;
  double q = 0.0;
  for (const Message& m : messages) {
    if (!(m.weight > 0.0)) {
      throw InvalidArgument("message weights must be positive");
    }
    numerator += m.weight * m.prediction;
    q += m.weight;
  }
  return numerator / q;
}

std::vector<double> InitialValues(const AttributeTable& attrs,
                                  InitPolicy policy) {
  (void)policy;  // kGlobalMean is the only policy.
  std::vector<double> values(attrs.size());
  for (std::size_t e = 0; e < attrs.size(); ++e) {
    const AttributeEntry& entry = attrs.entry(e);
    if (!IsTarget(entry)) {
      values[e] = entry.value;
      continue;
    }
    const AttrTypeSummary& s = attrs.summary(entry.attr);
    if (s.count == 0) {
      throw DataError("attribute type '" + attrs.types().Label(entry.attr) +
                      "' has no observed values to initialize from");
    }
    values[e] = s.mean;
  }
  return values;
}

PropagationResult Run(const KnowledgeGraph& graph, const AttributeTable& attrs,
                      const ModelRegistry& registry,
                      const PropagationConfig& config) {
  config.Validate();
  const unsigned threads = internal::ResolveThreads(config.threads);
  const Plan plan = CompilePlan(graph, attrs, registry, config);
  const std::size_t num_types = attrs.num_types();

  PropagationResult result;
  PropagationState& state = result.state;
  ImputationReport& report = result.report;

  state.values = InitialValues(attrs, config.init_policy);
  state.previous = state.values;
  state.ranges.resize(num_types);
  for (std::size_t a = 0; a < num_types; ++a) {
    const AttrTypeId id(static_cast<std::uint32_t>(a));
    state.ranges[a] = attrs.summary(id).count == 0 ? 0.0 : AttrScale(attrs, id);
  }
  state.last_max_delta.assign(num_types, 0.0);

  report.message_count.resize(attrs.size());
  report.total_weight.assign(attrs.size(), 0.0);
  for (std::size_t e = 0; e < attrs.size(); ++e) {
    const auto terms = plan.into(e);
    report.message_count[e] = terms.size();
    for (const Plan::Term& t : terms) report.total_weight[e] += t.weight;
    if (IsTarget(attrs.entry(e))) {
      report.targets.push_back(e);
      if (terms.empty()) ++report.never_messaged;
    }
  }

  std::vector<double> next = state.values;
  const std::vector<std::size_t>& targets = report.targets;
  while (state.iteration < config.max_iters) {
    const std::span<const double> prev = state.values;
    internal::ParallelFor(
        targets.size(), threads, [&](std::size_t begin, std::size_t end) {
          for (std::size_t i = begin; i < end; ++i) {
            const std::size_t e = targets[i];
            double numerator = 0.0;
            double q = 0.0;
            for (const Plan::Term& t : plan.into(e)) {
              numerator += t.weight * (t.eta * prev[t.source] + t.tau);
              q += t.weight;
            }
            next[e] = q > 0.0 ? Combine(prev[e], numerator / q, config.damping)
                              : prev[e];
          }
        });

    std::fill(state.last_max_delta.begin(), state.last_max_delta.end(), 0.0);
    for (std::size_t e : targets) {
      double& d = state.last_max_delta[attrs.entry(e).attr.index()];
      d = std::max(d, std::abs(next[e] - prev[e]));
    }
    std::swap(state.previous, state.values);
    std::swap(state.values, next);
    // Observed entries are never written and hold the same value in all
    // three buffers.
    ++state.iteration;

    std::vector<double> loss_by_type;
    if (config.record_loss) {
      loss_by_type = LossByType(plan, attrs, state.values, threads);
    }
    for (std::size_t a = 0; a < num_types; ++a) {
      report.trace.push_back(
          {state.iteration, AttrTypeId(static_cast<std::uint32_t>(a)),
           state.last_max_delta[a],
           config.record_loss ? loss_by_type[a] : std::nan("")});
    }

    bool done = true;
    for (std::size_t a = 0; a < num_types; ++a) {
      const double delta = state.last_max_delta[a];
      if (delta != 0.0 && !(delta < config.conv_frac * state.ranges[a])) {
        done = false;
        break;
      }
    }
    if (done) {
      state.converged = true;
      break;
    }
  }

  report.iterations = state.iteration;
  report.converged = state.converged;
  report.final_delta = state.last_max_delta;
  return result;
}

double Loss(const KnowledgeGraph& graph, const AttributeTable& attrs,
            const ModelRegistry& registry, std::span<const double> values,
            const PropagationConfig& config) {
  if (values.size() != attrs.size()) {
    throw InvalidArgument("value buffer does not match the attribute table");
  }
  const Plan plan = CompilePlan(graph, attrs, registry, config);
  double total = 0.0;
  for (std::size_t e = 0; e < attrs.size(); ++e) {
    total += EntryLoss(plan, values, e);
  }
  return total;
}

Predictions ToPredictions(const AttributeTable& attrs,
                          const PropagationResult& result) {
  Predictions out;
  for (std::size_t e : result.report.targets) {
    out.emplace(attrs.entry(e).key(), result.state.values[e]);
  }
  return out;
}

void WriteImputations(const KnowledgeGraph& graph, const AttributeTable& attrs,
                      const PropagationResult& result, std::ostream& out) {
  for (std::size_t e : result.report.targets) {
    const AttributeEntry& entry = attrs.entry(e);
    out << graph.entities().Label(entry.entity) << '\t'
        << attrs.types().Label(entry.attr) << '\t'
        << FormatExact(result.state.values[e]) << '\t'
        << result.report.message_count[e] << '\t'
        << FormatExact(result.report.total_weight[e]) << '\n';
  }
}

Predictions ReadImputations(std::istream& in, const KnowledgeGraph& graph,
                            const AttributeTable& attrs) {
  Predictions out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::stringstream ss(line);
    std::string entity, attr, value;
    if (!std::getline(ss, entity, '\t') || !std::getline(ss, attr, '\t') ||
        !std::getline(ss, value, '\t')) {
      throw ParseError(line_no, "expected at least 3 tab-separated fields");
    }
    const auto v = graph.entities().Find(entity);
    const auto a = attrs.types().Find(attr);
    if (!v || !a) {
      throw DataError("imputation line " + std::to_string(line_no) +
                      " names an unknown entity or attribute type");
    }
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw ParseError(line_no, "bad value '" + value + "'");
    }
    out[{*v, *a}] = parsed;
  }
  return out;
}

void WriteTrace(const AttributeTable& attrs, const ImputationReport& report,
                std::ostream& out) {
  out << "iter,attr_type,max_delta,loss\n";
  for (const TraceRow& row : report.trace) {
    out << row.iteration << ',' << attrs.types().Label(row.attr) << ','
        << FormatExact(row.max_delta) << ',' << FormatExact(row.loss) << '\n';
  }
}

}  // namespace mrap
