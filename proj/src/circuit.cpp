#include "baga/circuit.hpp"

#include <cmath>
#include <numeric>

#include "baga/errors.hpp"

namespace baga::circuit {

Concentration clamp_concentration(double raw) {
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

void validate(const LinearResponse& r) {
  if (!(r.scale > 0.0)) throw ParameterError("linear response scale must be > 0");
  if (!(r.gain >= 0.0)) throw ParameterError("linear response gain must be >= 0");
}

void validate(const HillResponse& r) {
  if (!(r.vmax > 0.0)) throw ParameterError("Hill vmax must be > 0");
  if (!(r.half_saturation > 0.0)) throw ParameterError("Hill half-saturation constant must be > 0");
  if (!(r.exponent > 0.0)) throw ParameterError("Hill exponent must be > 0");
}

void validate(const ResponseFn& r) {
  std::visit([](const auto& fn) { validate(fn); }, r);
}

void validate(const TransportParams& p) {
  if (!(p.vmax > 0.0)) throw ParameterError("transport vmax must be > 0");
  if (!(p.michaelis > 0.0)) throw ParameterError("Michaelis constant must be > 0");
  if (!(p.inhibitor_constant > 0.0)) throw ParameterError("inhibitor constant k2 must be > 0");
}

void validate(const SelectionParams& p) {
  if (!(p.k0 > 0.0)) throw ParameterError("k0 must be > 0");
  if (!(p.alpha >= 0.0)) throw ParameterError("alpha must be >= 0");
  if (!(p.beta > 0.0)) throw ParameterError("beta must be > 0");
}

void validate(const ReporterParams& p) {
  if (!(p.m > 0.0)) throw ParameterError("GFP constant m must be > 0");
  if (!(p.theta_gfp >= 0.0)) throw ParameterError("theta_gfp must be >= 0");
}

double linear_response(double iptg, double gain, double scale) {
  validate(LinearResponse{gain, scale});
  return gain * clamp_concentration(iptg).value / scale;
}

double hill_response(double x, double vmax, double half_saturation, double exponent) {
  validate(HillResponse{vmax, half_saturation, exponent});
  x = clamp_concentration(x).value;
  if (x == 0.0) return 0.0;
  // v / (1 + (k/x)^n) avoids overflow of x^n for large inputs.
  return vmax / (1.0 + std::pow(half_saturation / x, exponent));
}

double respond(const ResponseFn& fn, double input) {
  if (const auto* lin = std::get_if<LinearResponse>(&fn))
    return linear_response(input, lin->gain, lin->scale);
  const auto& hill = std::get<HillResponse>(fn);
  return hill_response(input, hill.vmax, hill.half_saturation, hill.exponent);
}

double inverse_response(const ResponseFn& fn, double z) {
  if (z < 0.0) throw ParameterError("target fitness must be >= 0");
  if (const auto* lin = std::get_if<LinearResponse>(&fn)) {
    validate(*lin);
    if (lin->gain == 0.0) {
      if (z == 0.0) return 0.0;
      throw ParameterError("zero-gain linear response cannot reach a positive fitness");
    }
    return z * lin->scale / lin->gain;
  }
  const auto& hill = std::get<HillResponse>(fn);
  validate(hill);
  if (z >= hill.vmax) throw ParameterError("Hill response cannot reach its maximum");
  if (z == 0.0) return 0.0;
  return hill.half_saturation * std::pow(z / (hill.vmax - z), 1.0 / hill.exponent);
}

double transport_velocity(double iptg, double inhibitor, const TransportParams& p) {
  validate(p);
  iptg = clamp_concentration(iptg).value;
  inhibitor = clamp_concentration(inhibitor).value;
  if (inhibitor == 0.0) return p.vmax * iptg / (p.michaelis + iptg);
  return p.vmax * iptg / (iptg + p.michaelis * (1.0 + inhibitor / p.inhibitor_constant));
}

double michaelis_from_values(std::span<const double> values, std::size_t plasmid_length) {
  if (plasmid_length == 0) throw ParameterError("plasmid length must be >= 1");
  const double k = std::accumulate(values.begin(), values.end(), 0.0) /
                   static_cast<double>(plasmid_length);
  if (!(k > 0.0)) throw ParameterError("Michaelis constant from item values must be > 0");
  return k;
}

double gfp_level(double z, double m) { return m * z; }

double updated_growth_rate(double z, const SelectionParams& p) {
  if (p.beta == 0.0) throw ParameterError("beta must be non-zero");
  if (p.alpha == 0.0) return p.k0;
  return p.k0 + z * p.alpha / p.beta;
}

bool eugenic_check(double gfp, double theta_e) { return gfp > theta_e; }

}  // namespace baga::circuit
