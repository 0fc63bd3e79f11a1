#pragma once

// Scenario pipelines: full analyses producing claim-by-claim reports, plus
// the JSON surfaces used by the command-line driver.

#include "ramlab/conductor.hpp"
#include "ramlab/expr.hpp"
#include "ramlab/monodromy.hpp"
#include "ramlab/report.hpp"

namespace ramlab {

struct RunOptions {
    unsigned f_ur = 8;
    long precision = 64;            // starting coefficient precision, v(p)=1 units
    bool stability_recheck = true;  // repeat structural conclusions at 2 f_ur
};

// retries fn with doubled precision on PrecisionError; the cap keeps the
// pi-adic working precision at or under 2^14 pi-units of the deepest tower
Report with_precision_retry(long start, long e_deepest, const std::function<Report(long)>& fn);

Report run_good_reduction(unsigned p, unsigned n, const std::string& c_expr,
                          const RunOptions& opt);
Report run_genus2(const TowerSpec& tower, const std::string& b2, const std::string& b3,
                  const std::string& b4, const RunOptions& opt);
// presets: "type-I-example", "type-II-example", "type-III-example"
Report run_genus2_preset(const std::string& preset, const RunOptions& opt);
Report run_group_info(const std::string& name);

// filtration profiles named in the CLI: "q8-1-3", "q8-5-69", "good-2-1", ...
FiltrationProfile preset_profile(const std::string& name);

nlohmann::ordered_json profile_to_json(const FiltrationProfile& p);
FiltrationProfile profile_from_json(const nlohmann::json& j);
nlohmann::ordered_json conductor_to_json(const ConductorReport& r);
nlohmann::ordered_json herbrand_to_json(const HerbrandFn& f);
FixedDimTable dims_from_json(const nlohmann::json& j);

// one-shot scenario runner for config files (kind dispatch); see README for
// the schema
Report run_config(const nlohmann::json& config);

}  // namespace ramlab
