// SPDX-License-Identifier: Apache-2.0

#include "rateregion/cli.hpp"

#include "rateregion/io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

namespace rateregion::cli {

namespace {

std::string read_all(std::istream &in)
{
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_input(const RunConfig &config, std::istream &in)
{
    if (config.input_path == "-")
        return read_all(in);
    std::ifstream file(config.input_path, std::ios::binary);
    if (!file)
        throw InputError("cannot open input file '" + config.input_path + "'");
    return read_all(file);
}

std::int64_t point_budget(const RunConfig &config)
{
    if (config.budget)
        return *config.budget;
    if (const char *env = std::getenv("RATEREGION_BUDGET")) {
        char *end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0)
            throw InputError("RATEREGION_BUDGET must be a positive integer");
        return v;
    }
    return kDefaultPointBudget;
}

int resolution_or(const RunConfig &config, int fallback)
{
    const int r = config.resolution.value_or(fallback);
    if (r < 2)
        throw InputError("--resolution must be >= 2");
    return r;
}

TwoUser two_user(const Channel &spec)
{
    if (spec.n() != 2)
        throw InputError("this command needs a two-user channel (n = 2), got n = " + std::to_string(spec.n()));
    return normalize(spec);
}

void emit_json(std::ostream &os, const json &j)
{
    os << j.dump(2) << '\n';
}

void classification_table(std::ostream &os, const TwoUser &ch, const CurvatureReport &r)
{
    auto q_text = [](double q) { return std::isfinite(q) ? csv_number(q) : std::string("inf"); };
    auto shape_text = [](const FrontierClass &c, const char *axis) {
        std::string s = to_string(c.shape);
        if (c.shape == CurveShape::inflection)
            s += std::string(" at ") + axis + " = " + csv_number(c.at_power);
        return s;
    };
    os << "channel  a=" << csv_number(ch.a) << " b=" << csv_number(ch.b) << " c=" << csv_number(ch.c)
       << " d=" << csv_number(ch.d) << " p_max=" << csv_number(ch.p_max) << '\n';
    os << "theta=" << csv_number(r.theta) << "  beta=" << csv_number(r.beta) << '\n';
    os << std::left << std::setw(10) << "frontier" << std::setw(16) << "Q" << "shape\n";
    os << std::setw(10) << "F2" << std::setw(16) << q_text(r.q1) << shape_text(r.f2_class, "P1") << '\n';
    os << std::setw(10) << "F1" << std::setw(16) << q_text(r.q2) << shape_text(r.f1_class, "P2") << '\n';
}

int execute(const RunConfig &config, const Channel &spec, std::ostream &os, std::ostream &err)
{
    const std::int64_t budget = point_budget(config);
    switch (config.command) {
    case Command::rates: {
        Powers p;
        if (config.powers.empty())
            p.powers = Eigen::VectorXd::Constant(spec.n(), spec.p_max);
        else
            p.powers = Eigen::Map<const Eigen::VectorXd>(config.powers.data(), Eigen::Index(config.powers.size()));
        const Rates r = rate_tuple(spec, p);
        if (config.output_format == Format::json) {
            emit_json(os, {{"powers", std::vector<double>(p.powers.data(), p.powers.data() + p.size())},
                           {"rates", std::vector<double>(r.rates.data(), r.rates.data() + r.size())}});
        } else {
            for (Eigen::Index i = 1; i <= spec.n(); ++i)
                os << "P_" << i << ',';
            for (Eigen::Index i = 1; i <= spec.n(); ++i)
                os << "C_" << i << (i == spec.n() ? "\n" : ",");
            for (Eigen::Index i = 0; i < spec.n(); ++i)
                os << csv_number(p[i]) << ',';
            for (Eigen::Index i = 0; i < spec.n(); ++i)
                os << csv_number(r[i]) << (i + 1 == spec.n() ? "\n" : ",");
        }
        return ok;
    }
    case Command::frontier2: {
        const TwoUserFrontier f = two_user_frontier(two_user(spec), resolution_or(config, kDefaultResolution));
        if (config.output_format == Format::json)
            emit_json(os, f);
        else
            write_frontier_csv(os, f);
        return ok;
    }
    case Command::classify: {
        const TwoUser ch = two_user(spec);
        const CurvatureReport r = curvature_report(ch);
        if (config.output_format == Format::json) {
            json j = r;
            j["channel"] = {{"a", ch.a}, {"b", ch.b}, {"c", ch.c}, {"d", ch.d}, {"p_max", ch.p_max}};
            emit_json(os, j);
        } else {
            classification_table(os, ch, r);
        }
        return ok;
    }
    case Command::timeshare: {
        const TwoUser ch = two_user(spec);
        const CurvatureReport r = curvature_report(ch);
        const TwoUserFrontier f = two_user_frontier(ch, resolution_or(config, kDefaultResolution));
        const TimeShareSchedule s = build_schedule(ch, r, f);
        if (config.output_format == Format::csv) {
            write_schedule_csv(os, s);
            return ok;
        }
        json j = {{"curvature", r}, {"schedule", s}};
        j["b_star"] = symmetric_bstar(ch.a, ch.p_max);
        j["symmetric"] = ch.a == ch.c && ch.b == ch.d;
        if (ch.a > 0.0 && ch.c > 0.0) {
            const AcConditionTerms t = ac_condition_terms(ch);
            j["ac_condition"] = {{"lhs", t.lhs}, {"rhs", t.rhs}, {"gamma", t.gamma}, {"holds", t.lhs >= t.rhs}};
        } else {
            j["ac_condition"] = nullptr;
        }
        emit_json(os, j);
        return ok;
    }
    case Command::frontiern: {
        const int res = resolution_or(config, default_oracle_resolution(spec.n()));
        const NUserFrontier f = n_user_frontier(spec, res, budget);
        if (config.hull && spec.n() != 3)
            throw InputError("--hull is only available for n = 3");
        if (config.output_format == Format::csv) {
            write_surfaces_csv(os, f.surfaces);
            return ok;
        }
        json j = {{"channel", channel_to_json(spec)}, {"surfaces", f.surfaces}, {"pareto", f.pareto}};
        if (config.hull) {
            Eigen::Matrix3Xd pts(3, Eigen::Index(f.pareto.size()));
            for (std::size_t k = 0; k < f.pareto.size(); ++k)
                pts.col(Eigen::Index(k)) = f.all_rates.col(f.pareto[k]);
            json faces = json::array();
            for (const auto &face : pareto_hull_3d(pts))
                faces.push_back({f.pareto[std::size_t(face[0])], f.pareto[std::size_t(face[1])],
                                 f.pareto[std::size_t(face[2])]});
            j["hull_faces"] = faces;
        }
        emit_json(os, j);
        return ok;
    }
    case Command::oracle_verify: {
        const int res = resolution_or(config, default_oracle_resolution(spec.n()));
        const ParetoCloud cloud = pareto_grid(spec, res, budget);
        const double tol = config.tolerance.value_or(default_tolerance(cloud));
        const DominanceReport report =
            spec.n() == 2 ? verify_frontier_dominance(cloud, two_user_frontier(normalize(spec)), tol)
                          : verify_frontier_dominance(cloud, n_user_frontier(spec, res, budget), tol);
        if (config.output_format == Format::csv) {
            write_cloud_csv(os, cloud);
        } else {
            emit_json(os, {{"grid_resolution", res},
                           {"tolerance", tol},
                           {"report", report},
                           {"pinned_power_property", verify_pinned_power_property(cloud)},
                           {"unpinned_points", unpinned_count(cloud)}});
        }
        if (!report.passed()) {
            err << "oracle-verify: " << report.violations.size() << " violation(s) at tolerance "
                << csv_number(tol) << '\n';
            return verification_failure;
        }
        return ok;
    }
    }
    return validation_error;
}

} // namespace

int run(const RunConfig &config, std::istream &in, std::ostream &out, std::ostream &err)
{
    try {
        if (config.output_format == Format::table && config.command != Command::classify)
            throw InputError("--format table is only available for classify");
        const Channel spec = parse_channel(read_input(config, in), config.db_input);
        if (config.output_path.empty() || config.output_path == "-")
            return execute(config, spec, out, err);
        std::ostringstream buffer;
        const int code = execute(config, spec, buffer, err);
        std::ofstream file(config.output_path, std::ios::binary);
        if (!file)
            throw InputError("cannot open output file '" + config.output_path + "'");
        file << buffer.str();
        return code;
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::length_error &e) {
        err << "error: " << e.what() << '\n';
    }
    return validation_error;
}

int main_entry(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Rate regions of the Gaussian interference channel with interference treated as noise"};
    app.require_subcommand(1);

    RunConfig config;
    const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"table", Format::table}};
    auto common = [&](CLI::App *sub, bool takes_resolution, const std::string &resolution_help) {
        sub->add_option("-i,--input", config.input_path, "Channel JSON file, '-' for stdin")->capture_default_str();
        sub->add_option("-f,--format", config.output_format, "Output format: json, csv (table for classify)")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("-o,--output", config.output_path, "Output file (default stdout)");
        sub->add_flag("--db", config.db_input, "Gains, noise power and p_max are given in dB");
        sub->add_option("--budget", config.budget,
                        "Maximum number of evaluated power tuples (default 2000000, env RATEREGION_BUDGET)")
            ->check(CLI::PositiveNumber);
        if (takes_resolution)
            sub->add_option("-r,--resolution", config.resolution, resolution_help)->check(CLI::Range(2, 1 << 24));
    };

    auto *rates = app.add_subcommand("rates", "Per-link rates for one power vector");
    common(rates, false, "");
    rates->add_option("--powers", config.powers, "Transmit powers, one per user (default all at p_max)")
        ->delimiter(',');
    auto *frontier2 = app.add_subcommand("frontier2", "Two-user frontier lines F1, F2 and their convex hull");
    common(frontier2, true, "Samples per frontier line (default 512)");
    auto *classify = app.add_subcommand("classify", "Curvature classification Q1, Q2 of a two-user channel");
    common(classify, false, "");
    auto *timeshare = app.add_subcommand("timeshare", "Optimal time-sharing schedule of a two-user channel");
    common(timeshare, true, "Samples per frontier line (default 512)");
    auto *frontiern = app.add_subcommand("frontiern", "Pinned-power hyper-surfaces of an n-user channel");
    common(frontiern, true, "Grid points per free axis (default 101 / 26 / 11 for n = 2 / 3 / more)");
    frontiern->add_flag("--hull", config.hull, "Add Pareto-facing convex hull faces (n = 3, JSON output)");
    auto *verify = app.add_subcommand("oracle-verify", "Check the analytic frontier against a brute-force grid");
    common(verify, true, "Grid points per axis (default 101 / 26 / 11 for n = 2 / 3 / more)");
    verify->add_option("--tol", config.tolerance,
                       "Rate tolerance (default 2/(resolution-1) * p_max * largest grid slope)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : validation_error;
    }

    if (rates->parsed())
        config.command = Command::rates;
    else if (frontier2->parsed())
        config.command = Command::frontier2;
    else if (classify->parsed())
        config.command = Command::classify;
    else if (timeshare->parsed())
        config.command = Command::timeshare;
    else if (frontiern->parsed())
        config.command = Command::frontiern;
    else
        config.command = Command::oracle_verify;
    return run(config, in, out, err);
}

} // namespace rateregion::cli
