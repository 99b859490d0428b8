#pragma once

// Fitness circuit: IPTG response, inhibitor-modulated uptake kinetics, GFP
// reporter, growth-rate selection and the eugenic culling rule.

#include <span>
#include <variant>

namespace baga::circuit {

// z = gain * iptg / scale
struct LinearResponse {
  double gain = 10.0;
  double scale = 60.0;
  bool operator==(const LinearResponse&) const = default;
};

// z = vmax * x^n / (half_saturation^n + x^n)
struct HillResponse {
  double vmax = 1.0;
  double half_saturation = 1.0;
  double exponent = 1.0;
  bool operator==(const HillResponse&) const = default;
};

using ResponseFn = std::variant<LinearResponse, HillResponse>;

struct TransportParams {
  double vmax = 1.0;
  double michaelis = 1.0;  // K_T
  double inhibitor_constant = 0.02;  // k2
  bool operator==(const TransportParams&) const = default;
};

struct SelectionParams {
  double k0 = 0.03;
  double alpha = 0.8;
  double beta = 10.0;
  bool operator==(const SelectionParams&) const = default;
};

struct ReporterParams {
  double m = 150.0;
  double theta_gfp = 149.0;
  bool operator==(const ReporterParams&) const = default;
};

// Concentrations are non-negative; negative objective values are clamped.
struct Concentration {
  double value = 0.0;
  bool clamped = false;
};

Concentration clamp_concentration(double raw);

void validate(const LinearResponse& r);
void validate(const HillResponse& r);
void validate(const ResponseFn& r);
void validate(const TransportParams& p);
void validate(const SelectionParams& p);
void validate(const ReporterParams& p);

double linear_response(double iptg, double gain, double scale);
double hill_response(double x, double vmax, double half_saturation, double exponent);
double respond(const ResponseFn& fn, double input);

// Input that makes `fn` produce `z`. Throws ParameterError if z is outside
// the attainable range.
double inverse_response(const ResponseFn& fn, double z);

double transport_velocity(double iptg, double inhibitor, const TransportParams& p);

// K_T = sum(values) / l
double michaelis_from_values(std::span<const double> values, std::size_t plasmid_length);

double gfp_level(double z, double m);

double updated_growth_rate(double z, const SelectionParams& p);

// True when the cell survives the eugenic rule (gfp > theta).
bool eugenic_check(double gfp, double theta_e);

}  // namespace baga::circuit
