#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hcsp/exact.hpp"

namespace hcsp {

namespace {

std::string node_name(int node, int end_dummy) {
  if (node == 0) return "0";
  if (node == end_dummy) return "e";
  return std::to_string(node);
}

std::string num(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(v);
    return os.str();
  }
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

int MilpModel::x(int cg, int day, int from, int to) const {
  const int n = instance->num_services();
  const std::size_t cell = (static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (day - 1)) *
                           (n + 1) * (n + 1);
  return x_index[cell + static_cast<std::size_t>(from) * (n + 1) + (to - 1)];
}
int MilpModel::t(int cg, int day, int node) const {
  const int n = instance->num_services();
  const std::size_t cell =
      (static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (day - 1)) * (n + 2);
  return t_index[cell + static_cast<std::size_t>(node)];
}
int MilpModel::y(int cg, int day, int from, int to) const {
  const int n = instance->num_services();
  const std::size_t cell = (static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (day - 1)) *
                           static_cast<std::size_t>(n) * n;
  return y_index[cell + static_cast<std::size_t>(from - 1) * n + (to - 1)];
}
int MilpModel::ybar(int cg, int day) const {
  return ybar_index[static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (day - 1)];
}
int MilpModel::u(int cg, int day) const {
  return u_index[static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (day - 1)];
}
int MilpModel::r(int cg, int day) const {
  return r_index[static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (day - 1)];
}
int MilpModel::rhat(int cg, int day) const {
  return rhat_index[static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (day - 1)];
}
int MilpModel::z(int cg) const { return z_index[static_cast<std::size_t>(cg - 1)]; }
int MilpModel::v_start(int service) const { return vs_index[static_cast<std::size_t>(service - 1)]; }
int MilpModel::v_end(int service) const { return ve_index[static_cast<std::size_t>(service - 1)]; }

MilpModel build_milp(const Instance& instance, const ObjectiveWeights& weights) {
  MilpModel m;
  m.instance = &instance;
  m.weights = weights;
  const int n = instance.num_services();
  const int N = instance.num_caregivers();
  const int E = n + 1;

  const auto add_var = [&](std::string name, char type, double lb, double ub) {
    m.vars.push_back(MilpVar{std::move(name), type, lb, ub});
    return static_cast<int>(m.vars.size()) - 1;
  };

  const auto on_day = [&](int svc, int day) { return instance.service(svc).day == day; };

  // x variables: arcs between the start dummy, services and the end dummy.
  m.x_index.assign(static_cast<std::size_t>(N) * kDaysPerWeek * (n + 1) * (n + 1), -1);
  for (int cg = 1; cg <= N; ++cg)
    for (int d = 1; d <= kDaysPerWeek; ++d)
      for (int from = 0; from <= n; ++from)
        for (int to = 1; to <= E; ++to) {
          if (from == to) continue;
          // services fixed to their own day: arcs touching them elsewhere are 0
          const bool usable = (from == 0 || on_day(from, d)) && (to == E || on_day(to, d));
          std::ostringstream name;
          name << "x_" << cg << "_" << d << "_" << node_name(from, E) << "_"
               << node_name(to, E);
          const std::size_t cell =
              (static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (d - 1)) * (n + 1) * (n + 1);
          m.x_index[cell + static_cast<std::size_t>(from) * (n + 1) + (to - 1)] =
              add_var(name.str(), 'B', 0.0, usable ? 1.0 : 0.0);
        }

  m.t_index.assign(static_cast<std::size_t>(N) * kDaysPerWeek * (n + 2), -1);
  for (int cg = 1; cg <= N; ++cg)
    for (int d = 1; d <= kDaysPerWeek; ++d)
      for (int node = 0; node <= E; ++node) {
        std::ostringstream name;
        name << "t_" << cg << "_" << d << "_" << node_name(node, E);
        const std::size_t cell =
            (static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (d - 1)) * (n + 2);
        m.t_index[cell + static_cast<std::size_t>(node)] =
            add_var(name.str(), 'C', 0.0, kMinutesPerDay);
      }

  m.y_index.assign(static_cast<std::size_t>(N) * kDaysPerWeek * n * n, -1);
  for (int cg = 1; cg <= N; ++cg)
    for (int d = 1; d <= kDaysPerWeek; ++d)
      for (int from = 1; from <= n; ++from)
        for (int to = 1; to <= n; ++to) {
          if (from == to) continue;
          const bool usable = on_day(from, d) && on_day(to, d);
          std::ostringstream name;
          name << "y_" << cg << "_" << d << "_" << from << "_" << to;
          const std::size_t cell = (static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (d - 1)) *
                                   static_cast<std::size_t>(n) * n;
          m.y_index[cell + static_cast<std::size_t>(from - 1) * n + (to - 1)] =
              add_var(name.str(), 'B', 0.0, usable ? 1.0 : 0.0);
        }

  m.ybar_index.assign(static_cast<std::size_t>(N) * kDaysPerWeek, -1);
  m.u_index = m.ybar_index;
  m.r_index = m.ybar_index;
  m.rhat_index = m.ybar_index;
  for (int cg = 1; cg <= N; ++cg)
    for (int d = 1; d <= kDaysPerWeek; ++d) {
      const std::size_t cell = static_cast<std::size_t>(cg - 1) * kDaysPerWeek + (d - 1);
      m.ybar_index[cell] = add_var("yb_" + std::to_string(cg) + "_" + std::to_string(d), 'B', 0, 1);
      m.u_index[cell] = add_var("u_" + std::to_string(cg) + "_" + std::to_string(d), 'B', 0, 1);
      m.r_index[cell] =
          add_var("r_" + std::to_string(cg) + "_" + std::to_string(d), 'C', 0, kMinutesPerDay);
      m.rhat_index[cell] =
          add_var("rh_" + std::to_string(cg) + "_" + std::to_string(d), 'C', 0, kMinutesPerDay);
    }

  m.z_index.assign(static_cast<std::size_t>(N), -1);
  for (int cg = 1; cg <= N; ++cg)
    m.z_index[static_cast<std::size_t>(cg - 1)] =
        add_var("z_" + std::to_string(cg), 'C', 0, 7.0 * kMinutesPerDay);

  m.vs_index.assign(static_cast<std::size_t>(n), -1);
  m.ve_index.assign(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j) {
    m.vs_index[static_cast<std::size_t>(j - 1)] =
        add_var("vs_" + std::to_string(j), 'C', 0, kMinutesPerDay);
    m.ve_index[static_cast<std::size_t>(j - 1)] =
        add_var("ve_" + std::to_string(j), 'C', 0, kMinutesPerDay);
  }

  const auto add_row = [&](std::string name, std::vector<MilpTerm> terms, char sense,
                           double rhs) {
    m.rows.push_back(MilpRow{std::move(name), std::move(terms), sense, rhs});
  };
  const auto tag2 = [](const char* b, int i, int d) {
    return std::string(b) + "_" + std::to_string(i) + "_" + std::to_string(d);
  };

  // (3)-(4): every service leaves once and is entered once.
  for (int j = 1; j <= n; ++j) {
    std::vector<MilpTerm> leave, enter;
    for (int cg = 1; cg <= N; ++cg)
      for (int d = 1; d <= kDaysPerWeek; ++d) {
        for (int k = 1; k <= E; ++k)
          if (k != j) leave.push_back({m.x(cg, d, j, k), 1.0});
        for (int from = 0; from <= n; ++from)
          if (from != j) enter.push_back({m.x(cg, d, from, j), 1.0});
      }
    add_row("c03_" + std::to_string(j), std::move(leave), 'E', 1.0);
    add_row("c04_" + std::to_string(j), std::move(enter), 'E', 1.0);
  }

  // (5): compatibility.
  for (int cg = 1; cg <= N; ++cg)
    for (int j = 1; j <= n; ++j) {
      std::vector<MilpTerm> terms;
      for (int d = 1; d <= kDaysPerWeek; ++d)
        for (int k = 1; k <= E; ++k)
          if (k != j) terms.push_back({m.x(cg, d, j, k), 1.0});
      add_row("c05_" + std::to_string(cg) + "_" + std::to_string(j), std::move(terms), 'L',
              instance.caregiver(cg).serves(j) ? 1.0 : 0.0);
    }

  for (int cg = 1; cg <= N; ++cg)
    for (int d = 1; d <= kDaysPerWeek; ++d) {
      const Caregiver& c = instance.caregiver(cg);
      const double gmax = c.availability[d - 1].end;
      const double gmin = c.availability[d - 1].start;
      const double gspan = c.availability[d - 1].width();

      {  // (6)-(7): each day starts and ends at the dummies.
        std::vector<MilpTerm> t6, t7;
        for (int k = 1; k <= E; ++k) t6.push_back({m.x(cg, d, 0, k), 1.0});
        for (int j = 0; j <= n; ++j) t7.push_back({m.x(cg, d, j, E), 1.0});
        add_row(tag2("c06", cg, d), std::move(t6), 'E', 1.0);
        add_row(tag2("c07", cg, d), std::move(t7), 'E', 1.0);
      }

      // (8): flow conservation.
      for (int h = 1; h <= n; ++h) {
        std::vector<MilpTerm> terms;
        for (int from = 0; from <= n; ++from)
          if (from != h) terms.push_back({m.x(cg, d, from, h), 1.0});
        for (int k = 1; k <= E; ++k)
          if (k != h) terms.push_back({m.x(cg, d, h, k), -1.0});
        add_row(tag2("c08", cg, d) + "_" + std::to_string(h), std::move(terms), 'E', 0.0);
      }

      // (9): hard windows gated by assignment.
      for (int j = 1; j <= n; ++j) {
        const TimeWindow hw = instance.hard_window(j, d);
        const int dur = instance.service(j).duration;
        std::vector<MilpTerm> lo{{m.t(cg, d, j), 1.0}}, hi{{m.t(cg, d, j), 1.0}};
        for (int k = 1; k <= E; ++k)
          if (k != j) {
            lo.push_back({m.x(cg, d, j, k), -static_cast<double>(hw.start)});
            hi.push_back({m.x(cg, d, j, k), -static_cast<double>(hw.end - dur)});
          }
        add_row(tag2("c09lo", cg, d) + "_" + std::to_string(j), std::move(lo), 'G', 0.0);
        add_row(tag2("c09up", cg, d) + "_" + std::to_string(j), std::move(hi), 'L', 0.0);
      }

      // (10): travel-time ordering, big-M = hard window end of the source.
      for (int j = 1; j <= n; ++j) {
        const TimeWindow hw = instance.hard_window(j, d);
        const int dur = instance.service(j).duration;
        for (int k = 1; k <= E; ++k) {
          if (k == j) continue;
          const int travel = k == E ? 0 : instance.travel(j, k);
          std::vector<MilpTerm> terms{{m.t(cg, d, j), 1.0},
                                      {m.t(cg, d, k), -1.0},
                                      {m.x(cg, d, j, k),
                                       static_cast<double>(dur + travel + hw.end)}};
          add_row(tag2("c10", cg, d) + "_" + std::to_string(j) + "_" + node_name(k, E),
                  std::move(terms), 'L', hw.end);
        }
      }

      // (11)-(12): availability of the dummies.
      add_row(tag2("c11", cg, d), {{m.t(cg, d, 0), 1.0}}, 'G', gmin);
      add_row(tag2("c12", cg, d), {{m.t(cg, d, E), 1.0}}, 'L', gmax);

      // (13)-(14): the start dummy is scheduled with the first service.
      for (int k = 1; k <= E; ++k) {
        std::vector<MilpTerm> t13{{m.t(cg, d, 0), 1.0},
                                  {m.t(cg, d, k), -1.0},
                                  {m.x(cg, d, 0, k), gmax}};
        std::vector<MilpTerm> t14{{m.t(cg, d, 0), 1.0},
                                  {m.t(cg, d, k), -1.0},
                                  {m.x(cg, d, 0, k), -gmax}};
        add_row(tag2("c13", cg, d) + "_" + node_name(k, E), std::move(t13), 'L', gmax);
        add_row(tag2("c14", cg, d) + "_" + node_name(k, E), std::move(t14), 'G', -gmax);
      }

      // (15): the end dummy is scheduled with the last service.
      for (int j = 1; j <= n; ++j) {
        std::vector<MilpTerm> terms{{m.t(cg, d, E), 1.0},
                                    {m.t(cg, d, j), -1.0},
                                    {m.x(cg, d, j, E), gmax}};
        add_row(tag2("c15", cg, d) + "_" + std::to_string(j), std::move(terms), 'L',
                gmax + instance.service(j).duration);
      }

      // (16): daily maximum on paid time.
      add_row(tag2("c16", cg, d),
              {{m.t(cg, d, E), 1.0}, {m.t(cg, d, 0), -1.0}, {m.rhat(cg, d), -1.0}}, 'L',
              c.daily_max[d - 1]);

      // (19)-(20): the break variable tracks the selected largest gap.
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          if (j == k) continue;
          const double link = instance.service(j).duration + instance.travel(j, k);
          std::vector<MilpTerm> t19{{m.r(cg, d), 1.0},
                                    {m.t(cg, d, k), -1.0},
                                    {m.t(cg, d, j), 1.0},
                                    {m.x(cg, d, j, k), -gmax}};
          add_row(tag2("c19", cg, d) + "_" + std::to_string(j) + "_" + std::to_string(k),
                  std::move(t19), 'G', -link - gmax);
          std::vector<MilpTerm> t20{{m.r(cg, d), 1.0},
                                    {m.t(cg, d, k), -1.0},
                                    {m.t(cg, d, j), 1.0},
                                    {m.x(cg, d, j, k), gmax},
                                    {m.y(cg, d, j, k), gmax}};
          add_row(tag2("c20", cg, d) + "_" + std::to_string(j) + "_" + std::to_string(k),
                  std::move(t20), 'L', -link + 2.0 * gmax);
        }

      // (21)-(23): break selection.
      add_row(tag2("c21", cg, d), {{m.r(cg, d), 1.0}, {m.ybar(cg, d), gmax}}, 'L', gmax);
      {
        std::vector<MilpTerm> t22{{m.ybar(cg, d), 1.0}};
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k)
            if (j != k) t22.push_back({m.y(cg, d, j, k), 1.0});
        add_row(tag2("c22", cg, d), std::move(t22), 'E', 1.0);
      }
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          if (j == k) continue;
          add_row(tag2("c23", cg, d) + "_" + std::to_string(j) + "_" + std::to_string(k),
                  {{m.y(cg, d, j, k), 1.0}, {m.x(cg, d, j, k), -1.0}}, 'L', 0.0);
        }

      // (24)-(25): u indicates whether the break reaches the unpaid threshold.
      add_row(tag2("c24", cg, d),
              {{m.r(cg, d), 1.0}, {m.u(cg, d), -static_cast<double>(instance.min_unpaid_break)}},
              'G', 0.0);
      add_row(tag2("c25", cg, d), {{m.r(cg, d), 1.0}, {m.u(cg, d), -gspan}}, 'L',
              instance.min_unpaid_break - m.epsilon_strict);

      // (26)-(28): the deducted break.
      add_row(tag2("c26", cg, d), {{m.rhat(cg, d), 1.0}, {m.u(cg, d), -gspan}}, 'L', 0.0);
      add_row(tag2("c27", cg, d), {{m.rhat(cg, d), 1.0}, {m.r(cg, d), -1.0}}, 'L', 0.0);
      add_row(tag2("c28", cg, d),
              {{m.rhat(cg, d), 1.0}, {m.r(cg, d), -1.0}, {m.u(cg, d), -gspan}}, 'G', -gspan);
    }

  // (18): weekly overtime lower bound.
  for (int cg = 1; cg <= N; ++cg) {
    std::vector<MilpTerm> terms{{m.z(cg), 1.0}};
    for (int d = 1; d <= kDaysPerWeek; ++d) {
      terms.push_back({m.t(cg, d, E), -1.0});
      terms.push_back({m.t(cg, d, 0), 1.0});
      terms.push_back({m.rhat(cg, d), 1.0});
    }
    add_row("c18_" + std::to_string(cg), std::move(terms), 'G',
            -static_cast<double>(instance.caregiver(cg).weekly_contract));
  }

  // (29)-(30): soft-window deviations.
  for (int j = 1; j <= n; ++j) {
    const int dur = instance.service(j).duration;
    std::vector<MilpTerm> t29{{m.v_start(j), 1.0}}, t30{{m.v_end(j), 1.0}};
    for (int cg = 1; cg <= N; ++cg)
      for (int d = 1; d <= kDaysPerWeek; ++d) {
        const TimeWindow sw = instance.soft_window(j, d);
        t29.push_back({m.t(cg, d, j), 1.0});
        t30.push_back({m.t(cg, d, j), -1.0});
        for (int k = 1; k <= E; ++k) {
          if (k == j) continue;
          t29.push_back({m.x(cg, d, j, k), -static_cast<double>(sw.start)});
          t30.push_back({m.x(cg, d, j, k), -static_cast<double>(dur - sw.end)});
        }
      }
    add_row("c29_" + std::to_string(j), std::move(t29), 'G', 0.0);
    add_row("c30_" + std::to_string(j), std::move(t30), 'G', 0.0);
  }

  // Objectives.
  for (int cg = 1; cg <= N; ++cg) {
    m.cost_objective.push_back({m.z(cg), static_cast<double>(weights.overtime)});
    for (int d = 1; d <= kDaysPerWeek; ++d) {
      m.cost_objective.push_back({m.t(cg, d, E), static_cast<double>(weights.paid_time)});
      m.cost_objective.push_back({m.t(cg, d, 0), -static_cast<double>(weights.paid_time)});
      m.cost_objective.push_back({m.rhat(cg, d), -static_cast<double>(weights.paid_time)});
      for (int j = 1; j <= n; ++j) {
        const int lambda = instance.caregiver(cg).affinity_for(j);
        if (lambda == 0) continue;
        for (int k = 1; k <= E; ++k)
          if (k != j)
            m.welfare_objective.push_back(
                {m.x(cg, d, j, k), static_cast<double>(weights.affinity * lambda)});
      }
    }
  }
  for (int j = 1; j <= n; ++j) {
    m.welfare_objective.push_back({m.v_start(j), static_cast<double>(weights.penalty)});
    m.welfare_objective.push_back({m.v_end(j), static_cast<double>(weights.penalty)});
  }
  return m;
}

namespace {

void write_terms(std::ostream& os, const MilpModel& model, const std::vector<MilpTerm>& terms) {
  int col = 0;
  bool first = true;
  for (const MilpTerm& term : terms) {
    if (term.coeff == 0.0) continue;
    std::ostringstream piece;
    const double a = term.coeff;
    if (first) {
      piece << (a < 0 ? "- " : "") << num(std::abs(a));
      first = false;
    } else {
      piece << (a < 0 ? "- " : "+ ") << num(std::abs(a));
    }
    piece << " " << model.vars[static_cast<std::size_t>(term.var)].name << " ";
    col += static_cast<int>(piece.str().size());
    os << piece.str();
    if (col > 180) {
      os << "\n   ";
      col = 0;
    }
  }
  if (first) os << "0 " << model.vars[0].name << " ";
}

}  // namespace

void emit_model(const MilpModel& model, const std::filesystem::path& path,
                const LpEmitOptions& options) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write LP file: " + path.string());
  os << "\\ biobjective home care scheduling model\n";
  os << "Minimize\n obj: ";
  write_terms(os, model,
              options.objective == LpObjective::Cost ? model.cost_objective
                                                     : model.welfare_objective);
  os << "\nSubject To\n";
  for (const MilpRow& row : model.rows) {
    os << " " << row.name << ": ";
    write_terms(os, model, row.terms);
    os << (row.sense == 'L' ? "<= " : row.sense == 'G' ? ">= " : "= ") << num(row.rhs) << "\n";
  }
  if (options.pin_cost) {
    os << " pin_cost: ";
    write_terms(os, model, model.cost_objective);
    os << "= " << num(*options.pin_cost) << "\n";
  }
  if (options.pin_welfare) {
    os << " pin_welfare: ";
    write_terms(os, model, model.welfare_objective);
    os << "= " << num(*options.pin_welfare) << "\n";
  }
  if (options.welfare_cap) {
    os << " welfare_cap: ";
    write_terms(os, model, model.welfare_objective);
    os << "<= " << num(*options.welfare_cap) << "\n";
  }
  os << "Bounds\n";
  for (const MilpVar& v : model.vars) {
    if (v.type == 'B') {
      if (v.ub == 0.0) os << " " << v.name << " = 0\n";
      continue;
    }
    os << " " << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << "\n";
  }
  os << "Binaries\n";
  int col = 0;
  for (const MilpVar& v : model.vars) {
    if (v.type != 'B') continue;
    os << " " << v.name;
    col += static_cast<int>(v.name.size()) + 1;
    if (col > 180) {
      os << "\n";
      col = 0;
    }
  }
  os << "\nEnd\n";
  if (!os) throw std::runtime_error("I/O failure writing " + path.string());
}

void emit_epsilon_subproblem(const MilpModel& model, const std::filesystem::path& path,
                             std::int64_t welfare_cap, double eps_augm, std::int64_t range) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write LP file: " + path.string());
  const double slack_coeff = -eps_augm / static_cast<double>(std::max<std::int64_t>(1, range));
  os << "\\ epsilon-constraint subproblem, welfare cap " << welfare_cap << "\n";
  os << "Minimize\n obj: ";
  write_terms(os, model, model.cost_objective);
  os << (slack_coeff < 0 ? "- " : "+ ") << num(std::abs(slack_coeff)) << " s2\n";
  os << "Subject To\n";
  for (const MilpRow& row : model.rows) {
    os << " " << row.name << ": ";
    write_terms(os, model, row.terms);
    os << (row.sense == 'L' ? "<= " : row.sense == 'G' ? ">= " : "= ") << num(row.rhs) << "\n";
  }
  os << " eps_cap: ";
  write_terms(os, model, model.welfare_objective);
  os << "+ 1 s2 = " << welfare_cap << "\n";
  os << "Bounds\n";
  for (const MilpVar& v : model.vars) {
    if (v.type == 'B') {
      if (v.ub == 0.0) os << " " << v.name << " = 0\n";
      continue;
    }
    os << " " << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << "\n";
  }
  os << " 0 <= s2 <= 1e12\n";
  os << "Binaries\n";
  int col = 0;
  for (const MilpVar& v : model.vars) {
    if (v.type != 'B') continue;
    os << " " << v.name;
    col += static_cast<int>(v.name.size()) + 1;
    if (col > 180) {
      os << "\n";
      col = 0;
    }
  }
  os << "\nEnd\n";
}

std::map<std::string, double> parse_solution_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path.string());
  std::map<std::string, double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    std::string rest;
    double value = 0.0;
    const auto eq = name.find('=');
    if (eq != std::string::npos && eq + 1 < name.size()) {
      value = std::stod(name.substr(eq + 1));
      name = name.substr(0, eq);
    } else if (eq != std::string::npos) {
      ls >> value;
      name = name.substr(0, eq);
    } else {
      ls >> rest;
      if (rest == "=") {
        ls >> value;
      } else {
        value = std::stod(rest);
      }
    }
    values[name] = value;
  }
  return values;
}

namespace {

double value_of(const std::map<std::string, double>& values, const std::string& name) {
  const auto it = values.find(name);
  return it == values.end() ? 0.0 : it->second;
}

}  // namespace

Solution decode_assignment(const MilpModel& model, const std::map<std::string, double>& values) {
  const Instance& inst = *model.instance;
  const int n = inst.num_services();
  const int E = n + 1;
  Solution sol = Solution::empty_solution(inst);

  for (int cg = 1; cg <= inst.num_caregivers(); ++cg)
    for (int d = 1; d <= kDaysPerWeek; ++d) {
      Route& route = sol.route(cg, d);
      int node = 0;
      for (int steps = 0; steps <= n + 1; ++steps) {
        int next = -1;
        for (int k = 1; k <= E; ++k) {
          if (k == node) continue;
          const int idx = model.x(cg, d, node, k);
          if (idx >= 0 && value_of(values, model.vars[static_cast<std::size_t>(idx)].name) > 0.5) {
            next = k;
            break;
          }
        }
        if (next < 0) {
          if (node == 0 && route.empty()) break;  // nothing scheduled that day
          throw std::runtime_error("assignment decode: broken route for caregiver " +
                                   std::to_string(cg) + " day " + std::to_string(d));
        }
        if (next == E) break;
        route.services.push_back(next);
        const int tidx = model.t(cg, d, next);
        route.start_times.push_back(static_cast<int>(
            std::llround(value_of(values, model.vars[static_cast<std::size_t>(tidx)].name))));
        node = next;
      }
    }
  return sol;
}

std::map<std::string, double> encode_solution(const MilpModel& model, const Solution& solution) {
  const Instance& inst = *model.instance;
  const int E = inst.num_services() + 1;
  std::map<std::string, double> v;
  const auto set = [&](int idx, double value) {
    v[model.vars[static_cast<std::size_t>(idx)].name] = value;
  };

  std::vector<std::int64_t> weekly_paid(inst.num_caregivers(), 0);
  std::vector<std::int64_t> vs(inst.num_services(), 0), ve(inst.num_services(), 0);

  for (const Route& route : solution.routes) {
    const int cg = route.caregiver_id;
    const int d = route.day;
    const DayMetrics metrics = compute_day_metrics(route, inst);
    if (route.empty()) {
      set(model.x(cg, d, 0, E), 1.0);
      const double anchor = inst.caregiver(cg).availability[d - 1].start;
      set(model.t(cg, d, 0), anchor);
      set(model.t(cg, d, E), anchor);
      set(model.ybar(cg, d), 1.0);
      continue;
    }
    int prev = 0;
    for (int i = 0; i < route.size(); ++i) {
      const int s = route.services[i];
      set(model.x(cg, d, prev, s), 1.0);
      set(model.t(cg, d, s), route.start_times[i]);
      prev = s;
    }
    set(model.x(cg, d, prev, E), 1.0);
    set(model.t(cg, d, 0), metrics.day_start);
    set(model.t(cg, d, E), metrics.day_end);

    if (metrics.brk.largest > 0) {
      set(model.y(cg, d, route.services[static_cast<std::size_t>(metrics.brk.gap_index)],
                  route.services[static_cast<std::size_t>(metrics.brk.gap_index) + 1]),
          1.0);
    } else {
      set(model.ybar(cg, d), 1.0);
    }
    set(model.r(cg, d), metrics.brk.largest);
    set(model.u(cg, d), metrics.brk.unpaid ? 1.0 : 0.0);
    set(model.rhat(cg, d), metrics.brk.deducted);
    weekly_paid[static_cast<std::size_t>(cg - 1)] += metrics.paid;

    for (int i = 0; i < route.size(); ++i) {
      const Service& s = inst.service(route.services[i]);
      const TimeWindow soft = inst.soft_window(s.id, d);
      vs[static_cast<std::size_t>(s.id - 1)] = std::max(0, soft.start - route.start_times[i]);
      ve[static_cast<std::size_t>(s.id - 1)] =
          std::max(0, route.start_times[i] + s.duration - soft.end);
    }
  }

  for (int cg = 1; cg <= inst.num_caregivers(); ++cg)
    set(model.z(cg),
        static_cast<double>(std::max<std::int64_t>(
            0, weekly_paid[static_cast<std::size_t>(cg - 1)] -
                   inst.caregiver(cg).weekly_contract)));
  for (int j = 1; j <= inst.num_services(); ++j) {
    set(model.v_start(j), static_cast<double>(vs[static_cast<std::size_t>(j - 1)]));
    set(model.v_end(j), static_cast<double>(ve[static_cast<std::size_t>(j - 1)]));
  }
  return v;
}

std::vector<std::string> check_assignment(const MilpModel& model,
                                          const std::map<std::string, double>& values) {
  constexpr double kTol = 1e-6;
  std::vector<std::string> violated;
  for (const MilpRow& row : model.rows) {
    double lhs = 0.0;
    for (const MilpTerm& term : row.terms)
      lhs += term.coeff *
             value_of(values, model.vars[static_cast<std::size_t>(term.var)].name);
    const bool ok = row.sense == 'L'   ? lhs <= row.rhs + kTol
                    : row.sense == 'G' ? lhs >= row.rhs - kTol
                                       : std::abs(lhs - row.rhs) <= kTol;
    if (!ok) violated.push_back(row.name);
  }
  for (const MilpVar& var : model.vars) {
    const double x = value_of(values, var.name);
    if (x < var.lb - kTol || x > var.ub + kTol) violated.push_back("bound:" + var.name);
    if (var.type == 'B' && std::abs(x - std::llround(x)) > kTol)
      violated.push_back("integrality:" + var.name);
  }
  return violated;
}

double objective_value(const std::vector<MilpTerm>& objective, const std::vector<MilpVar>& vars,
                       const std::map<std::string, double>& values) {
  double total = 0.0;
  for (const MilpTerm& term : objective)
    total += term.coeff * value_of(values, vars[static_cast<std::size_t>(term.var)].name);
  return total;
}

}  // namespace hcsp
