#include "cheblab/simulation.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "cheblab/error.hpp"
#include "cheblab/random.hpp"

namespace cheblab {

namespace {

constexpr std::uint64_t kMemberStream = 0x4d454d42u;

// Runs body(begin, end) over contiguous blocks of [0, n) on up to `jobs`
// threads. Callers only write to disjoint, index-addressed output.
template <class Body>
void parallel_blocks(std::size_t n, unsigned jobs, Body body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  const std::size_t block = (n + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::size_t begin = std::min(n, j * block);
    const std::size_t end = std::min(n, begin + block);
    workers.emplace_back([=] { body(begin, end); });
  }
  for (auto& w : workers) w.join();
}

void check_same_group(const SyntheticPopulation& population, const SigmaRule& sigma) {
  if (population.group_ptr() != sigma.group_ptr() &&
      (population.group().order() != sigma.group().order() ||
       population.group().elements() != sigma.group().elements())) {
    throw Error(ErrorCode::InvalidArgument, "sigma rule and population use different groups");
  }
}

// allowed[t * |G| + e]: element e is allowed at model place t.
std::vector<std::uint8_t> allowed_table(const SigmaRule& sigma, std::size_t horizon) {
  const auto& group = sigma.group();
  const std::size_t n = group.order();
  std::vector<std::uint8_t> table(horizon * n);
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto mask = sigma.allowed_classes(Place{t, t});
    for (std::size_t e = 0; e < n; ++e) {
      table[t * n + e] = mask[group.class_of(static_cast<ElementId>(e))] ? 1 : 0;
    }
  }
  return table;
}

// First place at which each member fails Sigma (horizon if it never fails).
std::vector<std::size_t> first_failures(const SyntheticPopulation& population,
                                        const std::vector<std::uint8_t>& table, std::size_t limit,
                                        unsigned jobs) {
  const std::size_t n = population.group().order();
  std::vector<std::size_t> out(population.size(), limit);
  parallel_blocks(population.size(), jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const auto row = population.row(m);
      for (std::size_t t = 0; t < limit; ++t) {
        if (!table[t * n + row[t]]) {
          out[m] = t;
          break;
        }
      }
    }
  });
  return out;
}

// Expected survival to each horizon for one independent and one accumulating member.
struct ModelExpectation {
  std::vector<Rational> independent;   // index T = product over places < T
  std::vector<Rational> accumulating;
};

ModelExpectation model_expectation(const SyntheticPopulation& population, const SigmaRule& sigma,
                                   const std::vector<std::uint8_t>& table, std::size_t limit) {
  const auto& group = population.group();
  const std::size_t n = group.order();
  ModelExpectation out;
  out.independent.reserve(limit + 1);
  out.independent.emplace_back(1);
  const auto& scenario = population.scenario();
  if (scenario) out.accumulating.emplace_back(1);
  for (std::size_t t = 0; t < limit; ++t) {
    unsigned long allowed = 0;
    for (std::size_t e = 0; e < n; ++e) allowed += table[t * n + e];
    Rational step(allowed, static_cast<unsigned long>(n));
    step.canonicalize();
    out.independent.push_back(out.independent.back() * step);
    if (scenario) {
      const auto& q = *population.quotient();
      const std::size_t coset = scenario->frobenius.at(t);
      const auto& h = scenario->subgroup.elements();
      unsigned long in_coset = 0;
      for (ElementId x : h) {
        in_coset += table[t * n + group.multiply(q.representatives[coset], x)];
      }
      Rational acc(in_coset, static_cast<unsigned long>(h.size()));
      acc.canonicalize();
      out.accumulating.push_back(out.accumulating.back() * acc);
    }
  }
  (void)sigma;
  return out;
}

}  // namespace

bool is_accumulating_rank(std::uint64_t rank, const Rational& weight) {
  if (rank == 0) return false;
  const BigInt num = weight.get_num();
  const BigInt den = weight.get_den();
  const BigInt here = BigInt(static_cast<unsigned long>(rank)) * num / den;
  const BigInt before = BigInt(static_cast<unsigned long>(rank - 1)) * num / den;
  return here > before;
}

std::size_t SyntheticPopulation::accumulating_count() const {
  return static_cast<std::size_t>(std::count(tags_.begin(), tags_.end(), MemberTag::Accumulating));
}

SyntheticPopulation sample_population(GroupPtr group, std::optional<AccumulatingScenario> scenario,
                                      std::size_t members, std::size_t horizon,
                                      std::uint64_t seed, unsigned jobs) {
  if (!group) throw Error(ErrorCode::InvalidArgument, "population needs a group");
  if (members == 0 || horizon == 0) {
    throw Error(ErrorCode::InvalidArgument, "population size and horizon must be positive");
  }
  if (members > kMaxPopulationCells / horizon) {
    throw Error(ErrorCode::BoundTooLarge, "population of " + std::to_string(members) + " members over " +
                                              std::to_string(horizon) + " places exceeds the cell cap");
  }
  SyntheticPopulation pop;
  pop.group_ = group;
  pop.horizon_ = horizon;
  pop.seed_ = seed;
  pop.tags_.assign(members, MemberTag::Independent);

  if (scenario) {
    if (scenario->subgroup.order() >= group->order()) {
      throw Error(ErrorCode::InvalidScenario, "accumulating subgroup must be proper (H != G)");
    }
    if (scenario->weight <= 0 || scenario->weight >= 1) {
      throw Error(ErrorCode::ZeroWeight, "scenario weight must lie in (0, 1)");
    }
    pop.quotient_ = quotient_map(*group, scenario->subgroup);
    if (auto len = scenario->frobenius.length(); len && *len < horizon) {
      throw Error(ErrorCode::HorizonExceedsPopulation, "L Frobenius sequence shorter than horizon");
    }
    for (std::size_t m = 0; m < members; ++m) {
      if (is_accumulating_rank(m + 1, scenario->weight)) pop.tags_[m] = MemberTag::Accumulating;
    }
    pop.scenario_ = std::move(scenario);
  }

  // L's Frobenius is fixed per place; materialize it once.
  std::vector<ElementId> coset_rep(horizon, 0);
  if (pop.scenario_) {
    for (std::size_t t = 0; t < horizon; ++t) {
      coset_rep[t] = pop.quotient_->representatives[pop.scenario_->frobenius.at(t)];
    }
  }

  const std::uint64_t order = group->order();
  pop.frobenius_.resize(members * horizon);
  parallel_blocks(members, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      std::mt19937_64 engine(derive_seed(seed, kMemberStream, m));
      ElementId* row = pop.frobenius_.data() + m * horizon;
      if (pop.tags_[m] == MemberTag::Accumulating) {
        const auto& h = pop.scenario_->subgroup.elements();
        for (std::size_t t = 0; t < horizon; ++t) {
          row[t] = group->multiply(coset_rep[t], h[bounded_draw(engine, h.size())]);
        }
      } else {
        for (std::size_t t = 0; t < horizon; ++t) {
          row[t] = static_cast<ElementId>(bounded_draw(engine, order));
        }
      }
    }
  });
  return pop;
}

SurvivalCurve survival_curve(const SyntheticPopulation& population, const SigmaRule& sigma,
                             std::span<const std::uint64_t> horizons, unsigned jobs) {
  check_same_group(population, sigma);
  std::uint64_t limit = 0;
  for (auto h : horizons) {
    if (h > population.horizon()) {
      throw Error(ErrorCode::HorizonExceedsPopulation,
                  "horizon " + std::to_string(h) + " exceeds sampled horizon " +
                      std::to_string(population.horizon()));
    }
    limit = std::max(limit, h);
  }
  const auto table = allowed_table(sigma, limit);
  const auto failures = first_failures(population, table, limit, jobs);
  const auto expectation = model_expectation(population, sigma, table, limit);

  SurvivalCurve curve;
  for (auto h : horizons) {
    SurvivalRow row;
    row.cutoff = h;
    row.total = population.size();
    for (std::size_t m = 0; m < population.size(); ++m) {
      const bool acc = population.tag(m) == MemberTag::Accumulating;
      const bool alive = failures[m] >= h;
      (acc ? row.accumulating_total : row.independent_total) += 1;
      if (alive) {
        ++row.survivors;
        (acc ? row.accumulating_survivors : row.independent_survivors) += 1;
      }
    }
    row.proportion = static_cast<double>(row.survivors) / static_cast<double>(row.total);
    Rational expected = expectation.independent[h] * static_cast<unsigned long>(row.independent_total);
    if (row.accumulating_total) {
      expected += expectation.accumulating[h] * static_cast<unsigned long>(row.accumulating_total);
    }
    expected /= static_cast<unsigned long>(row.total);
    row.exact_expectation = to_double(expected);
    curve.rows.push_back(row);
  }
  return curve;
}

SurvivalCurve survival_by_height(const SyntheticPopulation& population, const SigmaRule& sigma,
                                 std::uint64_t horizon, std::span<const std::uint64_t> cutoffs) {
  check_same_group(population, sigma);
  if (horizon > population.horizon()) {
    throw Error(ErrorCode::HorizonExceedsPopulation, "horizon exceeds sampled horizon");
  }
  const auto table = allowed_table(sigma, horizon);
  const auto failures = first_failures(population, table, horizon, 1);
  const auto expectation = model_expectation(population, sigma, table, horizon);
  SurvivalCurve curve;
  for (auto x : cutoffs) {
    SurvivalRow row;
    row.cutoff = x;
    const std::size_t upto = std::min<std::size_t>(x, population.size());
    for (std::size_t m = 0; m < upto; ++m) {
      const bool acc = population.tag(m) == MemberTag::Accumulating;
      ++row.total;
      (acc ? row.accumulating_total : row.independent_total) += 1;
      if (failures[m] >= horizon) {
        ++row.survivors;
        (acc ? row.accumulating_survivors : row.independent_survivors) += 1;
      }
    }
    if (row.total) {
      row.proportion = static_cast<double>(row.survivors) / static_cast<double>(row.total);
      Rational expected =
          expectation.independent[horizon] * static_cast<unsigned long>(row.independent_total);
      if (row.accumulating_total) {
        expected +=
            expectation.accumulating[horizon] * static_cast<unsigned long>(row.accumulating_total);
      }
      expected /= static_cast<unsigned long>(row.total);
      row.exact_expectation = to_double(expected);
    }
    curve.rows.push_back(row);
  }
  return curve;
}

Rational survival_probability_exact(const PermGroup& group, std::uint64_t forbidden_size,
                                    std::uint64_t restricted_places, std::uint64_t m) {
  if (forbidden_size > group.order()) {
    throw Error(ErrorCode::InvalidArgument, "forbidden set larger than the group");
  }
  Rational base(static_cast<unsigned long>(group.order() - forbidden_size),
                static_cast<unsigned long>(group.order()));
  base.canonicalize();
  return rational_pow(base, m * restricted_places);
}

IndependentSurvivors greedy_independent_survivors(const SyntheticPopulation& population,
                                                  const SigmaRule& sigma, std::uint64_t horizon) {
  check_same_group(population, sigma);
  if (population.scenario()) {
    throw Error(ErrorCode::InvalidScenario,
                "independent survivors need a population sampled without a scenario");
  }
  if (horizon > population.horizon()) {
    throw Error(ErrorCode::HorizonExceedsPopulation, "horizon exceeds sampled horizon");
  }
  const auto table = allowed_table(sigma, horizon);
  const auto failures = first_failures(population, table, horizon, 1);
  IndependentSurvivors out;
  for (std::size_t m = 0; m < population.size(); ++m) {
    if (failures[m] >= horizon) out.members.push_back(m);
  }
  out.count = out.members.size();
  return out;
}

}  // namespace cheblab
