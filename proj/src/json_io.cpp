#include "measureval/json_io.hpp"

namespace measureval {

void to_json(nlohmann::json& j, const SampleSummary& s) {
    j = nlohmann::json{{"count", s.count}, {"mean", s.mean}, {"sd", s.sd}};
}

void to_json(nlohmann::json& j, const AcceptanceInterval& i) {
    j = nlohmann::json{{"lower", i.lower}, {"upper", i.upper}};
}

void to_json(nlohmann::json& j, const Verdict& v) {
    j = nlohmann::json{{"criterion", criterion_name(v.criterion)},
                       {"accepted", v.accepted},
                       {"statistic", v.statistic},
                       {"interval", v.interval},
                       {"alpha", v.alpha},
                       {"df", nlohmann::json::array({v.df1})}};
    if (v.df2 != 0) j["df"].push_back(v.df2);
    if (v.sd_interval) j["sd_interval"] = *v.sd_interval;
}

void to_json(nlohmann::json& j, const RejectionEstimate& e) {
    j = nlohmann::json{{"point", e.point},
                       {"lower", e.lower},
                       {"upper", e.upper},
                       {"rejections", e.rejections},
                       {"replications", e.replications}};
}

void to_json(nlohmann::json& j, const SimulationConfig& c) {
    j = nlohmann::json{{"mu_ref", c.mu_ref},
                       {"sigma_ref", c.sigma_ref},
                       {"mu_test", c.mu_test},
                       {"sigma_test", c.sigma_test},
                       {"n_ref", c.n_ref},
                       {"n_test", c.n_test},
                       {"alpha", c.alpha},
                       {"replications", c.replications},
                       {"seed", c.seed},
                       {"criterion", criterion_name(c.criterion)},
                       {"tail", c.tail == VarianceTail::UpperOnly ? "upper" : "two-sided"},
                       {"reference_mode",
                        c.reference_mode == ReferenceMode::FreshPerReplication ? "fresh" : "fixed"}};
}

void from_json(const nlohmann::json& j, RejectionEstimate& e) {
    j.at("point").get_to(e.point);
    j.at("lower").get_to(e.lower);
    j.at("upper").get_to(e.upper);
    j.at("rejections").get_to(e.rejections);
    j.at("replications").get_to(e.replications);
}

}  // namespace measureval
