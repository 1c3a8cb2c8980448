#include "orliczmp/report.hpp"

#include <ostream>

namespace orliczmp {

namespace {

std::string num(double v) { return format_double(v == 0.0 ? 0.0 : v); }
std::string flag(bool b) { return b ? "true" : "false"; }

std::string vec(const Vec& x) {
  std::string s;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? "," : "") + num(x[i]);
  return s.empty() ? "-" : s;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_report(std::ostream& os, const SimonenkoIndices& ix) {
  os << "p_G = " << num(ix.p_G) << "\n";
  os << "q_G = " << num(ix.q_G) << "\n";
  os << "q_G_inf = " << num(ix.q_G_inf) << "\n";
  os << "indices_stabilized = " << flag(ix.stabilized) << "\n";
  for (std::size_t k = 0; k < ix.shells.size(); ++k)
    os << "shell." << k << " = radius=" << num(ix.shells[k].radius) << " inf=" << num(ix.shells[k].inf_ratio)
       << " sup=" << num(ix.shells[k].sup_ratio) << "\n";
  if (!ix.warning.empty()) os << "warning = " << ix.warning << "\n";
}

void write_report(std::ostream& os, const Delta2Report& d) {
  os << "delta2.holds = " << flag(d.holds) << "\n";
  os << "delta2.holds_globally = " << flag(d.holds_globally) << "\n";
  os << "delta2.K1 = " << num(d.K1) << "\n";
  os << "delta2.M1 = " << num(d.M1) << "\n";
  os << "delta2.samples = " << d.sample_count << "\n";
  os << "delta2.max_radius = " << num(d.max_radius) << "\n";
}

void write_report(std::ostream& os, const Nabla2Report& n) {
  os << "nabla2.holds = " << flag(n.holds) << "\n";
  os << "nabla2.holds_globally = " << flag(n.holds_globally) << "\n";
  os << "nabla2.K2 = " << num(n.K2) << "\n";
  os << "nabla2.M2 = " << num(n.M2) << "\n";
  os << "nabla2.samples = " << n.sample_count << "\n";
  os << "nabla2.max_radius = " << num(n.max_radius) << "\n";
}

void write_report(std::ostream& os, const ConjugateResult& c) {
  os << "conjugate = " << num(c.value) << "\n";
  os << "upper_bound = " << num(c.upper_bound) << "\n";
  os << "argmax = " << vec(c.argmax) << "\n";
  os << "localization_radius = " << num(c.radius) << "\n";
  os << "certified = " << flag(c.certified) << "\n";
}

void write_report(std::ostream& os, const SpaceReport& r) {
  os << "modular_u = " << num(r.modular_u) << "\n";
  os << "modular_du = " << num(r.modular_du) << "\n";
  os << "norm_u = " << num(r.norm_u) << "\n";
  os << "norm_du = " << num(r.norm_du) << "\n";
  os << "sobolev_norm = " << num(r.sobolev_norm) << "\n";
  os << "joint_norm = " << num(r.joint_norm) << "\n";
  os << "embedding_constant = " << num(r.embedding_constant) << "\n";
  os << "rho = " << num(r.rho) << "\n";
}

void write_report(std::ostream& os, const Verdict& v) {
  os << "verdict." << v.name << " = " << to_string(v.status) << " margin=" << num(v.margin)
     << " t=" << num(v.witness_t) << " x=" << vec(v.witness_x) << " note=" << quoted(v.note) << "\n";
  for (std::size_t k = 0; k < v.details.size(); ++k)
    os << "detail." << v.name << "." << k << " = " << v.details[k] << "\n";
}

void write_report(std::ostream& os, const HypothesisReport& r) {
  write_report(os, r.indices);
  write_report(os, r.delta2);
  write_report(os, r.nabla2);
  os << "R_Gstar_f = " << num(r.R_Gstar_f) << "\n";
  os << "integral_a = " << num(r.integral_a) << "\n";
  os << "embedding_constant = " << num(r.embedding_constant) << "\n";
  os << "rho = " << num(r.rho) << "\n";
  os << "rhs_theorem1 = " << num(r.rhs_theorem1) << "\n";
  os << "rhs_theorem2 = " << num(r.rhs_theorem2) << "\n";
  os << "theorem1_applicable = " << flag(r.theorem1_applicable) << "\n";
  os << "theorem2_applicable = " << flag(r.theorem2_applicable) << "\n";
  for (const auto& v : r.verdicts) write_report(os, v);
}

void write_report(std::ostream& os, const RimReport& r) {
  os << "rho = " << num(r.rho) << "\n";
  os << "rim_samples = " << r.samples << "\n";
  os << "rim_skipped = " << r.skipped << "\n";
  os << "rim_sampled_min = " << num(r.sampled_min) << "\n";
  os << "rim_theorem1_bound = " << num(r.theorem1_bound) << "\n";
  os << "rim_theorem2_bound = " << num(r.theorem2_bound) << "\n";
  os << "rim_analytic_bound = " << num(r.analytic_bound) << "\n";
  os << "alpha = " << num(r.alpha) << "\n";
}

void write_report(std::ostream& os, const SolveReport& r) {
  os << "converged = " << flag(r.converged) << "\n";
  os << "J_value = " << num(r.J_value) << "\n";
  os << "grad_norm = " << num(r.grad_norm) << "\n";
  os << "el_residual = " << num(r.el_residual) << "\n";
  os << "alpha_rim = " << num(r.alpha_rim) << "\n";
  os << "mp_level_c = " << num(r.mp_level_c) << "\n";
  os << "endpoint_xi = " << num(r.endpoint_xi) << "\n";
  os << "iterations = " << r.iterations << "\n";
  os << "newton_iterations = " << r.newton_iterations << "\n";
  os << "descent_stalled = " << flag(r.descent_stalled) << "\n";
  os << "linf_bound_du = " << num(r.linf_bound_du) << "\n";
  os << "embedding_constant = " << num(r.embedding_constant) << "\n";
  write_report(os, r.rim);
  os << "nodes = " << r.u_star.size() << "\n";
  if (!r.diagnostics.empty()) os << "diagnostics = " << r.diagnostics << "\n";
}

void write_report(std::ostream& os, const CertReport& c) {
  os << "el_residual = " << num(c.el_residual) << "\n";
  os << "max_grad_G_du = " << num(c.max_flux) << "\n";
  os << "max_du = " << num(c.max_du) << "\n";
  os << "J_value = " << num(c.J_value) << "\n";
  os << "refined = " << flag(c.refined) << "\n";
  if (c.refined) {
    os << "refined.el_residual = " << num(c.refined_el_residual) << "\n";
    os << "refined.max_grad_G_du = " << num(c.refined_max_flux) << "\n";
    os << "refined.max_du = " << num(c.refined_max_du) << "\n";
    os << "refined.J_value = " << num(c.refined_J) << "\n";
    os << "du_ratio = " << num(c.du_ratio) << "\n";
    os << "flux_ratio = " << num(c.flux_ratio) << "\n";
  }
  os << "growth_flag = " << flag(c.growth_flag) << "\n";
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "iter,max_index,J_max,grad_norm,step,ridge_gain\n";
  for (const auto& r : trace)
    os << r.iter << "," << r.max_index << "," << num(r.J_max) << "," << num(r.grad_norm) << "," << num(r.step) << "," << num(r.ridge_gain) << "\n";
}

}  // namespace orliczmp
