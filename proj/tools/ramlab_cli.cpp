// Command-line driver: scenario analyses, filtration algebra, conductor
// computation and group facts, with deterministic text or JSON reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ramlab/group.hpp"
#include "ramlab/pipeline.hpp"

using namespace ramlab;

namespace {

int emit_report(const Report& rep, const std::string& format, const std::string& out_path) {
    std::string payload =
        format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text();
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream os(out_path);
        os << payload;
    }
    return rep.ok() ? 0 : 1;
}

FiltrationProfile load_profile(const std::string& arg) {
    // a preset name or a path to a JSON profile
    if (arg.find('.') == std::string::npos && arg.find('/') == std::string::npos)
        return preset_profile(arg);
    std::ifstream is(arg);
    if (!is) throw DomainError("cannot open profile file '" + arg + "'");
    nlohmann::json j;
    is >> j;
    return profile_from_json(j);
}

void emit_json(const nlohmann::ordered_json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        std::ofstream(out_path) << j.dump(2) << "\n";
}

long env_precision(long fallback) {
    if (const char* v = std::getenv("RAMLAB_PREC")) return std::atol(v);
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact wild-monodromy toolkit for p-cyclic covers over local fields"};
    app.require_subcommand(1);

    std::string format = "text", out_path;
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_path, "write the report to a file");

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "run a scenario analysis");
    analyze->require_subcommand(1);

    unsigned gp = 2, gn = 1, f_ur = 8;
    long precision = env_precision(64);
    std::string c_expr = "1";
    bool stability = false;
    auto* good = analyze->add_subcommand("good-reduction",
                                         "p-cyclic cover 1 + c X^q + X^{1+q} with q = p^n");
    good->add_option("--p", gp, "residue characteristic")->required();
    good->add_option("--n", gn, "q = p^n")->required();
    good->add_option("--c", c_expr, "the parameter c (expression over the tower)");
    good->add_option("--f-ur", f_ur, "residue degree of the unramified proxy");
    good->add_option("--prec", precision, "starting coefficient precision (v(p) = 1 units)");

    std::string preset, b2, b3, b4, tower_json;
    auto* g2 = analyze->add_subcommand("genus2", "genus-2 quintic cover, p = 2");
    g2->add_option("--preset", preset, "type-I-example | type-II-example | type-III-example");
    g2->add_option("--b2", b2, "coefficient expression");
    g2->add_option("--b3", b3, "coefficient expression");
    g2->add_option("--b4", b4, "coefficient expression");
    g2->add_option("--tower", tower_json, "tower config JSON file");
    g2->add_option("--f-ur", f_ur, "residue degree of the unramified proxy");
    g2->add_option("--prec", precision, "starting coefficient precision");
    g2->add_flag("--stability", stability, "re-derive structure at 2 f_ur");

    std::string config_path;
    auto* from_config = analyze->add_subcommand("config", "run a scenario config file");
    from_config->add_option("file", config_path, "JSON scenario config")->required();

    // ---- filtration ----
    auto* filt = app.add_subcommand("filtration", "filtration algebra on profiles");
    filt->require_subcommand(1);
    std::string prof_a, prof_b;
    long tame_degree = 1;
    unsigned tame_p = 2;
    std::string label0_new = "G0";
    auto* fphi = filt->add_subcommand("phi", "Herbrand phi of a lower profile");
    fphi->add_option("--profile", prof_a)->required();
    auto* fpsi = filt->add_subcommand("psi", "Herbrand psi of a lower profile");
    fpsi->add_option("--profile", prof_a)->required();
    auto* fupper = filt->add_subcommand("upper", "convert a lower profile to upper numbering");
    fupper->add_option("--profile", prof_a)->required();
    auto* flower = filt->add_subcommand("lower", "convert an upper profile to lower numbering");
    flower->add_option("--profile", prof_a)->required();
    auto* fprod = filt->add_subcommand("product", "product of arithmetically disjoint profiles");
    fprod->add_option("--a", prof_a)->required();
    fprod->add_option("--b", prof_b)->required();
    auto* ftame = filt->add_subcommand("tame", "tame base change");
    ftame->add_option("--profile", prof_a)->required();
    ftame->add_option("--degree", tame_degree)->required();
    ftame->add_option("--p", tame_p)->required();
    ftame->add_option("--label", label0_new);

    // ---- conductor ----
    auto* cond = app.add_subcommand("conductor", "Swan/Artin conductor from a profile");
    auto* swan = cond->add_subcommand("swan", "conductor report from profile + dimension table");
    std::string dims_path;
    swan->add_option("--profile", prof_a)->required();
    swan->add_option("--dims", dims_path, "JSON: {genus, dims: {label: dim}}")->required();

    // ---- group ----
    auto* grp = app.add_subcommand("group", "finite group facts");
    std::string group_name;
    auto* ginfo = grp->add_subcommand("info", "orders of the classical subgroups");
    ginfo->add_option("--name", group_name)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (good->parsed()) {
            RunOptions opt{f_ur, precision, false};
            return emit_report(run_good_reduction(gp, gn, c_expr, opt), format, out_path);
        }
        if (g2->parsed()) {
            RunOptions opt{f_ur, precision, stability};
            if (!preset.empty())
                return emit_report(run_genus2_preset(preset, opt), format, out_path);
            TowerSpec t;
            if (!tower_json.empty()) {
                std::ifstream is(tower_json);
                nlohmann::json j;
                is >> j;
                t.p = j.at("p").get<unsigned>();
                for (const auto& st : j.at("steps")) {
                    if (st.contains("radical"))
                        t.steps.push_back(RadicalStepSpec{st["radical"]["m"].get<long>(),
                                                          st["radical"]["radicand"].get<std::string>(),
                                                          st["radical"].value("name", "")});
                    else {
                        EisensteinStepSpec e;
                        for (const auto& c : st["eisenstein"]["coeffs"])
                            e.coeffs.push_back(c.get<std::string>());
                        e.name = st["eisenstein"].value("name", "");
                        t.steps.push_back(e);
                    }
                }
            }
            t.f_ur = f_ur;
            t.precision = precision;
            RunOptions opt2{f_ur, precision, stability};
            return emit_report(run_genus2(t, b2, b3, b4, opt2), format, out_path);
        }
        if (from_config->parsed()) {
            std::ifstream is(config_path);
            if (!is) throw DomainError("cannot open config '" + config_path + "'");
            nlohmann::json j;
            is >> j;
            return emit_report(run_config(j), format, out_path);
        }
        if (fphi->parsed() || fpsi->parsed()) {
            FiltrationProfile p = load_profile(prof_a);
            HerbrandFn fn = phi_of(p);
            if (fpsi->parsed()) fn = fn.inverse();
            emit_json(herbrand_to_json(fn), out_path);
            return 0;
        }
        if (fupper->parsed()) {
            emit_json(profile_to_json(to_upper(load_profile(prof_a))), out_path);
            return 0;
        }
        if (flower->parsed()) {
            emit_json(profile_to_json(to_lower(load_profile(prof_a))), out_path);
            return 0;
        }
        if (fprod->parsed()) {
            FiltrationProfile a = load_profile(prof_a), b = load_profile(prof_b);
            if (a.mode == FiltMode::lower) a = to_upper(a);
            if (b.mode == FiltMode::lower) b = to_upper(b);
            bool adv = false;
            FiltrationProfile prod = product_arith_disjoint(a, b, &adv);
            nlohmann::ordered_json j;
            j["upper"] = profile_to_json(prod);
            j["lower"] = profile_to_json(to_lower(prod));
            j["arith_disjoint_advisory"] = adv;
            emit_json(j, out_path);
            return 0;
        }
        if (ftame->parsed()) {
            emit_json(profile_to_json(
                          tame_base_change(load_profile(prof_a), tame_degree, tame_p, label0_new)),
                      out_path);
            return 0;
        }
        if (swan->parsed()) {
            std::ifstream is(dims_path);
            if (!is) throw DomainError("cannot open dims '" + dims_path + "'");
            nlohmann::json j;
            is >> j;
            emit_json(conductor_to_json(swan_conductor(load_profile(prof_a), dims_from_json(j))),
                      out_path);
            return 0;
        }
        if (ginfo->parsed()) return emit_report(run_group_info(group_name), format, out_path);
    } catch (const PrecisionError& e) {
        std::cerr << "error: " << e.what()
                  << "\nhint: raise --prec (doubling) or --f-ur and rerun\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
