#pragma once

#include <map>
#include <string>

#include "monge/families.hpp"

namespace monge::detail {

struct Mutations {
  std::map<std::string, double> factors;
  double factor(const std::string& name) const {
    const auto it = factors.find(name);
    return it == factors.end() ? 1.0 : it->second;
  }
};

// margin >= 1e-6 on a real-valued expression
DomainPredicate positive(std::string name, std::function<double(double, double)> f);
// |expression| >= 1e-6
DomainPredicate nonzero(std::string name, std::function<double(double, double)> f);

// Values of the unmutated-field evaluator at order 0, for predicates that need W or f.
FieldSample values_at(const FieldBundle& b, double x, double z);

FieldBundle build_trivial(const TrivialCfg& c);
FieldBundle build_m1(const M1ImplicitCfg& c);
FieldBundle build_degenerate(const DegenerateCfg& c);
FieldBundle build_sigma_const(const M3SigmaConstCfg& c, const Mutations& mut);
FieldBundle build_l1_const(const M3L1ConstCfg& c, const Mutations& mut);
FieldBundle build_theta_const(const M3ThetaConstCfg& c, const Mutations& mut);
FieldBundle build_mn_theta_const(const MnThetaConstCfg& c, const Mutations& mut);
FieldBundle build_hodo(const M3HodoExampleCfg& c, const Mutations& mut);
FieldBundle build_general(const M3GeneralCfg& c, const Mutations& mut);
FieldBundle build_general_e0(const M3GeneralE0Cfg& c, const Mutations& mut);

}  // namespace monge::detail
