#include "stokes/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "stokes/format.hpp"

namespace stokes {

TimingSample time_solver(Method method, const Scenario& scenario, int M, int repeats)
{
    if (repeats < 1)
        throw std::invalid_argument("repeats must be at least 1");
    using Clock = std::chrono::steady_clock;

    (void)solve(method, scenario, M, 1);  // warm-up
    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        const Solution s = solve(method, scenario, M, 1);
        t.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    }

    TimingSample out;
    out.method_tag = std::string(to_string(method));
    out.M = M;
    out.repeats = repeats;
    double sum = 0.0;
    for (double x : t)
        sum += x;
    out.mean_seconds = sum / repeats;
    out.min_seconds = *std::min_element(t.begin(), t.end());
    double var = 0.0;
    for (double x : t)
        var += (x - out.mean_seconds) * (x - out.mean_seconds);
    out.stddev_seconds = repeats > 1 ? std::sqrt(var / (repeats - 1)) : 0.0;
    return out;
}

RatioReport timing_ratios(const std::vector<TimingSample>& samples)
{
    std::map<int, std::map<std::string, double>> by_m;
    for (const TimingSample& s : samples)
        by_m[s.M][s.method_tag] = s.mean_seconds;
    RatioReport report;
    for (const auto& [M, times] : by_m) {
        auto get = [&, M = M](std::string_view tag) {
            const auto it = times.find(std::string(tag));
            if (it == times.end())
                throw std::invalid_argument("no " + std::string(tag) + " timing at M=" +
                                            std::to_string(M));
            if (!(it->second > 0.0))
                throw std::invalid_argument("non-positive " + std::string(tag) +
                                            " timing at M=" + std::to_string(M));
            return it->second;
        };
        const double proj = get(to_string(Method::Projection));
        report.rows.push_back({M, get(to_string(Method::SaddlePoint)) / proj,
                               get(to_string(Method::Decoupling)) / proj});
    }
    return report;
}

void write_timing_csv(std::ostream& out, const std::vector<TimingSample>& samples)
{
    out << "method,M,repeats,mean_s,min_s,stddev_s\n";
    for (const TimingSample& s : samples)
        out << s.method_tag << ',' << s.M << ',' << s.repeats << ',' << fmt17(s.mean_seconds)
            << ',' << fmt17(s.min_seconds) << ',' << fmt17(s.stddev_seconds) << '\n';
}

std::vector<TimingSample> read_timing_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "method,M,repeats,mean_s,min_s,stddev_s")
        throw std::runtime_error("timing CSV: unexpected header");
    std::vector<TimingSample> samples;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto c = split_csv(line);
        if (c.size() != 6)
            throw std::runtime_error("timing CSV: expected 6 columns in '" + line + "'");
        samples.push_back({c[0], std::stoi(c[1]), std::stoi(c[2]), parse_real(c[3]),
                           parse_real(c[4]), parse_real(c[5])});
    }
    return samples;
}

std::string timing_json(const std::vector<TimingSample>& samples, const RatioReport& ratios)
{
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const TimingSample& s : samples)
        arr.push_back({{"method", s.method_tag},
                       {"M", s.M},
                       {"repeats", s.repeats},
                       {"mean_s", s.mean_seconds},
                       {"min_s", s.min_seconds},
                       {"stddev_s", s.stddev_seconds}});
    j["samples"] = arr;
    auto rr = nlohmann::ordered_json::array();
    for (const RatioRow& r : ratios.rows)
        rr.push_back({{"M", r.M},
                      {"saddle_over_projection", r.saddle_over_projection},
                      {"decoupling_over_projection", r.decoupling_over_projection}});
    j["ratios"] = rr;
    return j.dump(2);
}

}  // namespace stokes
