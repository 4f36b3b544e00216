#include "opnet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "opnet/graph_metrics.hpp"

namespace opnet {

void SweepConfig::validate() const {
    if (n < 2) throw std::invalid_argument("sweep needs n >= 2");
    if (max_steps < 1) throw std::invalid_argument("sweep needs max_steps >= 1");
    if (f_points < 2 || v_points < 2) throw std::invalid_argument("sweep grid must be at least 2x2");
    if (!(f_lo > 0.0 && f_hi < 1.0 && f_lo <= f_hi)) throw std::invalid_argument("f range must lie in (0,1)");
    if (!(v_lo >= 0.0 && v_hi <= 0.5 && v_lo <= v_hi)) throw std::invalid_argument("V range must lie in [0,0.5]");
    if (jobs < 0) throw std::invalid_argument("jobs must be nonnegative");
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
    }
    if (count > 1) out.back() = hi;
    return out;
}

SweepCell run_cell(double f, double V, int max_steps, UpdateRule rule, const OpinionProfile& initial) {
    SweepCell cell;
    cell.f = f;
    cell.V = V;
    try {
        ModelParams p;
        p.f = f;
        p.V = V;
        p.n = static_cast<int>(initial.size());
        p.max_steps = max_steps;
        p.rule = rule;
        RunOptions opt;
        opt.keep_graphs = false;
        const Trajectory tr = run(p, initial, opt);
        cell.diameter_t1 = directed_diameter(tr.first_graph);
        cell.components_final = static_cast<int>(weak_components(tr.final_graph).size());
        cell.classification = tr.classification;
        if (tr.termination == Termination::steady_state) cell.steps_to_steady = tr.steps();
        if (tr.classification && *tr.classification != Classification::persistent_disagreement) {
            const auto& x = tr.final_profile();
            double sum = 0.0;
            for (double v : x.values()) sum += v;
            cell.consensus_value = sum / static_cast<double>(x.size());
        }
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

std::vector<SweepCell> run_sweep(const SweepConfig& config, const OpinionProfile& initial) {
    config.validate();
    if (static_cast<int>(initial.size()) != config.n) throw std::invalid_argument("initial profile size differs from n");
    const auto fs = linspace(config.f_lo, config.f_hi, config.f_points);
    const auto vs = linspace(config.v_lo, config.v_hi, config.v_points);
    const std::size_t total = fs.size() * vs.size();
    std::vector<SweepCell> cells(total);

    std::size_t workers = config.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                           : static_cast<std::size_t>(config.jobs);
    workers = std::clamp<std::size_t>(workers, 1, total);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            cells[k] = run_cell(fs[k / vs.size()], vs[k % vs.size()], config.max_steps, config.rule, initial);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return cells;
}

namespace {
std::string real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
    out << kSweepHeader << '\n';
    for (const auto& c : cells) {
        out << real(c.f) << ',' << real(c.V) << ',';
        if (!c.error.empty()) {
            out << ",,error,,\n";
            continue;
        }
        out << (c.diameter_t1 ? std::to_string(*c.diameter_t1) : "inf") << ',' << c.components_final << ','
            << (c.classification ? std::string(to_string(*c.classification)) : "unterminated") << ','
            << (c.steps_to_steady ? std::to_string(*c.steps_to_steady) : "horizon") << ','
            << (c.consensus_value ? real(*c.consensus_value) : "") << '\n';
    }
}

}  // namespace opnet
