#include "zs/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace zs {

namespace {

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

Json indexed_json(const Indexed& v) {
  Json a = Json::array();
  for (cplx z : v.v) a.push_back(cjson(z));
  return a;
}

const char* state_name(GapState g) {
  switch (g) {
    case GapState::open: return "open";
    case GapState::near_collapsed: return "near_collapsed";
    case GapState::collapsed: return "collapsed";
  }
  return "";
}

Coeffs coeffs_from(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const Json& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  Coeffs c;
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number() || !e[2].is_number())
      throw ParseError(std::string("entries of '") + key + "' must be [k, re, im] with integer k");
    const int k = e[0].get<int>();
    if (c.count(k)) throw ParseError(std::string("duplicate frequency in '") + key + "'");
    c[k] = {e[1].get<double>(), e[2].get<double>()};
  }
  return c;
}

Json coeffs_json(const Coeffs& c) {
  Json a = Json::array();
  for (const auto& [k, v] : c) a.push_back(Json::array({k, v.real(), v.imag()}));
  return a;
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(indent * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(indent * depth, ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        os << (first ? "" : ",") << pad << Json(k).dump() << sep;
        write(os, v, indent, depth + 1);
        first = false;
      }
      os << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        os << (first ? "" : (flat ? ", " : ",")) << (flat ? "" : pad);
        write(os, v, indent, depth + 1);
        first = false;
      }
      os << (flat ? "" : close) << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

void csv_c(std::ostream& os, cplx z) { os << ',' << format_number(z.real()) << ',' << format_number(z.imag()); }

}  // namespace

Potential potential_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("potential must be a JSON object");
  return {coeffs_from(j, "coeffs1"), coeffs_from(j, "coeffs2")};
}

Potential read_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return potential_from_json(j);
}

Json to_json(const Potential& phi) {
  return {{"coeffs1", coeffs_json(phi.coeffs1())}, {"coeffs2", coeffs_json(phi.coeffs2())}};
}

Json to_json(const SpectrumRecord& s) {
  Json states = Json::array();
  for (auto g : s.state) states.push_back(state_name(g));
  return {{"N", s.N},
          {"counting_N", s.counting_N},
          {"real_type", s.real_type},
          {"h_tau", cjson(s.h_tau)},
          {"lambda_minus", indexed_json(s.lam_minus)},
          {"lambda_plus", indexed_json(s.lam_plus)},
          {"tau", indexed_json(s.tau)},
          {"gamma", indexed_json(s.gamma)},
          {"gamma_sq", indexed_json(s.gamma_sq)},
          {"mu", indexed_json(s.mu)},
          {"nu", indexed_json(s.nu)},
          {"lambda_dot", indexed_json(s.lam_dot)},
          {"delta_mu", indexed_json(s.delta_mu)},
          {"u_mu", indexed_json(s.u_mu)},
          {"gap_state", states}};
}

Json to_json(const BirkhoffCoordinates& b) {
  Json entries = Json::array();
  for (const auto& e : b.entries) {
    Json o = {{"n", e.n},         {"I", e.I},
              {"theta", e.theta}, {"x", e.x},
              {"y", e.y},         {"collapsed", e.collapsed},
              {"xi", cjson(e.xi)}, {"eta", e.eta ? Json(*e.eta) : Json(nullptr)},
              {"beta", e.beta},   {"z_plus", cjson(e.z_plus)},
              {"z_minus", cjson(e.z_minus)}, {"near_branch", e.near_branch}};
    entries.push_back(std::move(o));
  }
  return {{"N", b.N}, {"h_tau", cjson(b.h_tau)}, {"coordinates", entries}};
}

Json to_json(const SigmaSequence& q) {
  return {{"n", q.n},
          {"N", q.sigma.N},
          {"sigma", indexed_json(q.sigma)},
          {"residual_norm", q.residual_norm},
          {"newton_iterations", q.newton_iters},
          {"damped_steps", q.damped_steps},
          {"certified", q.certified}};
}

Json to_json(const FlowTrajectory& t) {
  Json rows = Json::array();
  for (const auto& st : t.states)
    rows.push_back({{"s", st.s},
                    {"mu_n", cjson(st.mu_n)},
                    {"delta_mu_n", cjson(st.delta_mu_n)},
                    {"delta_drift", st.delta_drift},
                    {"mu_drift", st.mu_drift},
                    {"norm_drift", st.norm_drift},
                    {"h_tau_drift", st.h_tau_drift},
                    {"projection_residual", st.projection_residual}});
  return {{"n", t.n},
          {"max_delta_drift", t.max_delta_drift},
          {"max_mu_drift", t.max_mu_drift},
          {"mu_dot_residual", t.mu_dot_residual},
          {"max_norm_drift", t.max_norm_drift},
          {"max_projection_residual", t.max_projection_residual},
          {"breach", t.breach},
          {"final", to_json(t.final())},
          {"samples", rows}};
}

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  os << '\n';
  return os.str();
}

void write_csv(std::ostream& os, const SpectrumRecord& s) {
  os << "n,lambda_minus_re,lambda_minus_im,lambda_plus_re,lambda_plus_im,tau_re,tau_im,gamma_sq_re,gamma_sq_im,"
        "mu_re,mu_im,nu_re,nu_im,lambda_dot_re,lambda_dot_im,delta_mu_re,delta_mu_im,state\n";
  for (int n = -s.N; n <= s.N; ++n) {
    os << n;
    for (const Indexed* a : {&s.lam_minus, &s.lam_plus, &s.tau, &s.gamma_sq, &s.mu, &s.nu, &s.lam_dot, &s.delta_mu})
      csv_c(os, (*a)[n]);
    os << ',' << state_name(s.gap(n)) << '\n';
  }
}

void write_csv(std::ostream& os, const BirkhoffCoordinates& b) {
  os << "n,I,theta,x,y,collapsed\n";
  for (const auto& e : b.entries)
    os << e.n << ',' << format_number(e.I) << ',' << format_number(e.theta) << ',' << format_number(e.x) << ',' << format_number(e.y) << ','
       << (e.collapsed ? 1 : 0) << '\n';
}

void write_csv(std::ostream& os, const SigmaSequence& q) {
  os << "m,sigma_re,sigma_im\n";
  for (int m = -q.sigma.N; m <= q.sigma.N; ++m) {
    os << m;
    csv_c(os, q.sigma[m]);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const FlowTrajectory& t) {
  os << "s,mu_n_re,mu_n_im,delta_mu_n_re,delta_mu_n_im,delta_drift,mu_drift,norm_drift,h_tau_drift,"
        "projection_residual\n";
  for (const auto& st : t.states) {
    os << format_number(st.s);
    csv_c(os, st.mu_n);
    csv_c(os, st.delta_mu_n);
    os << ',' << format_number(st.delta_drift) << ',' << format_number(st.mu_drift) << ',' << format_number(st.norm_drift) << ','
       << format_number(st.h_tau_drift) << ',' << format_number(st.projection_residual) << '\n';
  }
}

}  // namespace zs
