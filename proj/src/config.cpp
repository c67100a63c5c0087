// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The lcpa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "lcpa/config.hpp"

#include "lcpa/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lcpa {

namespace pt = boost::property_tree;

namespace {

const std::vector<std::pair<Scheme, std::string_view>> kSchemeNames{
    {Scheme::lcpa_mm, "lcpa_mm"},     {Scheme::lcpa_asymptotic, "lcpa_asymptotic"},
    {Scheme::max_min, "max_min"},     {Scheme::sum_rate, "sum_rate"},
    {Scheme::water_filling, "water_filling"}, {Scheme::uniform, "uniform"},
};

std::string trim(std::string_view s)
{
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos)
        return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_commas(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(trim(text.substr(start, end - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

double parse_number(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    double v = 0.0;
    in >> v;
    if (in.fail() || !(in >> std::ws).eof() || !std::isfinite(v))
        throw ParseError("key '" + key + "': not a number: '" + text + "'");
    return v;
}

// Reads each key of a section at most once and flags leftovers.
class SectionReader {
public:
    SectionReader(const pt::ptree& tree, std::string name) : tree_(tree), name_(std::move(name)) {}

    std::optional<std::string> text(const std::string& key)
    {
        used_.insert(key);
        const auto it = tree_.find(key);
        if (it == tree_.not_found())
            return std::nullopt;
        return trim(it->second.data());
    }

    std::optional<double> number(const std::string& key)
    {
        auto t = text(key);
        if (!t)
            return std::nullopt;
        return parse_number(*t, name_ + "." + key);
    }

    double required(const std::string& key)
    {
        auto v = number(key);
        if (!v)
            throw ParseError("[" + name_ + "] missing key '" + key + "'");
        return *v;
    }

    // Exactly one of several unit variants; returns the converted value.
    template <typename... Alternatives>
    std::optional<double> one_of(Alternatives... alternatives)
    {
        std::optional<double> out;
        std::string found;
        auto consider = [&](const std::pair<const char*, double (*)(double)>& alt) {
            if (auto v = number(alt.first)) {
                if (out)
                    throw ParseError("[" + name_ + "] both '" + found + "' and '" + alt.first + "' given");
                out = alt.second(*v);
                found = alt.first;
            }
        };
        (consider(alternatives), ...);
        return out;
    }

    void reject_unknown() const
    {
        for (const auto& [key, value] : tree_)
            if (!used_.count(key))
                throw ParseError("[" + name_ + "] unknown key '" + key + "'");
    }

private:
    const pt::ptree& tree_;
    std::string name_;
    std::set<std::string> used_;
};

double identity(double x) { return x; }
double khz(double x) { return x * 1e3; }
double milliwatts(double x) { return x * 1e-3; }

} // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string_view scheme_name(Scheme scheme)
{
    for (const auto& [s, name] : kSchemeNames)
        if (s == scheme)
            return name;
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    const std::string t = trim(name);
    for (const auto& [s, n] : kSchemeNames)
        if (n == t)
            return s;
    throw ParseError("unknown scheme '" + t + "'");
}

std::vector<Scheme> parse_scheme_list(std::string_view text)
{
    std::vector<Scheme> out;
    for (const auto& item : split_commas(text)) {
        const Scheme s = parse_scheme(item);
        if (std::find(out.begin(), out.end(), s) != out.end())
            throw ParseError("scheme '" + item + "' listed twice");
        out.push_back(s);
    }
    return out;
}

const std::vector<Scheme>& all_schemes()
{
    static const std::vector<Scheme> schemes{Scheme::lcpa_mm,  Scheme::lcpa_asymptotic, Scheme::max_min,
                                             Scheme::sum_rate, Scheme::water_filling,   Scheme::uniform};
    return schemes;
}

std::string_view sweep_axis_name(SweepAxis axis)
{
    return axis == SweepAxis::time_budget_s ? "time_budget_s" : "num_antennas";
}

SweepAxis parse_sweep_axis(std::string_view name)
{
    const std::string t = trim(name);
    if (t == "time_budget_s")
        return SweepAxis::time_budget_s;
    if (t == "num_antennas")
        return SweepAxis::num_antennas;
    throw ParseError("unknown sweep axis '" + t + "' (expected time_budget_s or num_antennas)");
}

std::vector<double> parse_value_list(std::string_view text)
{
    std::vector<double> out;
    if (trim(text).empty())
        return out;
    for (const auto& item : split_commas(text))
        out.push_back(parse_number(item, "sweep_values"));
    return out;
}

void ExperimentSpec::validate() const
{
    config.validate();
    if (tasks.size() != config.num_users())
        throw InvalidArgument("experiment: one task per user required");
    for (const auto& task : tasks)
        task.validate();
    if (schemes.empty())
        throw InvalidArgument("experiment: no schemes selected");
    if (runs < 1)
        throw InvalidArgument("experiment: runs must be >= 1");
    for (std::size_t i = 1; i < sweep_values.size(); ++i)
        if (!(sweep_values[i] > sweep_values[i - 1]))
            throw InvalidArgument("experiment: sweep values must be strictly increasing");
    for (double v : sweep_values) {
        if (!(v > 0.0))
            throw InvalidArgument("experiment: sweep values must be positive");
        if (sweep_axis == SweepAxis::num_antennas && v != std::floor(v))
            throw InvalidArgument("experiment: antenna counts must be integers");
    }
    if (solver.per_user_cap_w && !(*solver.per_user_cap_w * static_cast<double>(config.num_users()) >
                                   config.total_power_w))
        throw InvalidArgument("experiment: per-user cap times K must exceed the total power");
}

ExperimentSpec parse_experiment(std::istream& in)
{
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }

    ExperimentSpec spec;
    spec.schemes = all_schemes();
    bool have_system = false;
    std::vector<double> path_loss;

    for (const auto& [section, body] : tree) {
        if (section == "system") {
            have_system = true;
            SectionReader r(body, section);
            auto bw = r.one_of(std::pair{"bandwidth_hz", &identity}, std::pair{"bandwidth_khz", &khz});
            auto noise = r.one_of(std::pair{"noise_power_w", &identity}, std::pair{"noise_power_dbm", &dbm_to_watts});
            auto power = r.one_of(std::pair{"total_power_w", &identity}, std::pair{"total_power_mw", &milliwatts},
                                  std::pair{"total_power_dbm", &dbm_to_watts});
            auto cap = r.one_of(std::pair{"per_user_cap_w", &identity}, std::pair{"per_user_cap_mw", &milliwatts},
                                std::pair{"per_user_cap_dbm", &dbm_to_watts});
            if (!bw || !noise || !power)
                throw ParseError("[system] needs bandwidth, noise power and total power");
            spec.config.bandwidth_hz = *bw;
            spec.config.noise_power_w = *noise;
            spec.config.total_power_w = *power;
            spec.solver.per_user_cap_w = cap;
            spec.config.time_budget_s = r.required("time_budget_s");
            const double antennas = r.required("num_antennas");
            if (!(antennas >= 1.0) || antennas != std::floor(antennas))
                throw ParseError("[system] num_antennas must be a positive integer");
            spec.config.num_antennas = static_cast<std::size_t>(antennas);
            r.reject_unknown();
        } else if (section.rfind("task.", 0) == 0) {
            SectionReader r(body, section);
            LearningTask task;
            task.a = r.required("a");
            task.b = r.required("b");
            task.rho = r.number("rho").value_or(1.0);
            task.bits_per_sample = r.required("bits_per_sample");
            task.initial_samples = r.required("initial_samples");
            auto pl = r.one_of(std::pair{"path_loss_db", &db_to_linear}, std::pair{"path_loss_linear", &identity});
            if (!pl)
                throw ParseError("[" + section + "] needs path_loss_db or path_loss_linear");
            r.reject_unknown();
            spec.tasks.push_back(task);
            path_loss.push_back(*pl);
        } else if (section == "experiment") {
            SectionReader r(body, section);
            if (auto s = r.text("schemes"))
                spec.schemes = parse_scheme_list(*s);
            if (auto a = r.text("sweep_axis"))
                spec.sweep_axis = parse_sweep_axis(*a);
            if (auto v = r.text("sweep_values"))
                spec.sweep_values = parse_value_list(*v);
            if (auto runs = r.number("runs")) {
                if (*runs < 1.0 || *runs != std::floor(*runs))
                    throw ParseError("[experiment] runs must be a positive integer");
                spec.runs = static_cast<int>(*runs);
            }
            if (auto seed = r.text("seed")) {
                try {
                    if (seed->empty() || !std::isdigit(static_cast<unsigned char>(seed->front())))
                        throw std::invalid_argument("not a plain integer");
                    std::size_t used = 0;
                    spec.seed = std::stoull(*seed, &used);
                    if (used != seed->size())
                        throw std::invalid_argument("trailing characters");
                } catch (const std::exception&) {
                    throw ParseError("[experiment] seed must be a nonnegative integer");
                }
            }
            r.reject_unknown();
        } else if (section == "solver") {
            SectionReader r(body, section);
            if (auto v = r.number("mm_max_iterations"))
                spec.solver.mm_max_iterations = static_cast<int>(*v);
            if (auto v = r.number("mm_tol"))
                spec.solver.mm_tol = *v;
            if (auto v = r.number("subproblem_tol"))
                spec.solver.subproblem_tol = *v;
            if (auto v = r.number("asymptotic_eps"))
                spec.solver.asymptotic_eps = *v;
            if (auto v = r.number("max_min_tol"))
                spec.solver.max_min_tol = *v;
            if (auto v = r.number("sum_rate_max_iterations"))
                spec.solver.sum_rate_max_iterations = static_cast<int>(*v);
            r.reject_unknown();
        } else {
            throw ParseError("config: unknown section [" + section + "]");
        }
    }
    if (!have_system)
        throw ParseError("config: missing [system] section");
    if (spec.tasks.empty())
        throw ParseError("config: no [task.<name>] sections");
    spec.config.path_loss_linear = path_loss;
    try {
        spec.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config " + path.string());
    try {
        return parse_experiment(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

ExperimentSpec reference_experiment(std::size_t num_antennas)
{
    ExperimentSpec spec;
    spec.config.bandwidth_hz = 180e3;
    spec.config.time_budget_s = 5.0;
    spec.config.noise_power_w = dbm_to_watts(-87.0);
    // 13 dBm rounded to 20 mW, the budget the reference power splits add up to
    spec.config.total_power_w = 20e-3;
    spec.config.num_antennas = num_antennas;
    spec.config.path_loss_linear = {db_to_linear(-100.0), db_to_linear(-100.0)};
    // MNIST on a CNN, Scikit-learn digits on an SVM
    spec.tasks = {
        LearningTask{7.3, 0.69, 1.0, 6276.0, 300.0},
        LearningTask{5.2, 0.72, 1.2, 324.0, 200.0},
    };
    return spec;
}

} // namespace lcpa
