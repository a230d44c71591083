#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace desynclab {

enum class Protocol { kDesync, kPco };

inline const char* protocol_name(Protocol p) {
  return p == Protocol::kDesync ? "desync" : "pco";
}

// Parameters of one experiment cell. Times are in seconds; everything the
// ring math consumes is a fraction of the period.
struct ProtocolParams {
  int w = 8;                       // node count
  double alpha = 0.5;              // coupling constant
  double b_thres = 0.001;          // allowed gap deviation from 1/w
  double c_conf = 0.9999;          // confidence level behind b_thres
  double period_s = 1.0;           // firing period T
  double sigma_delta_s = 0.00034;  // phase measurement noise std, seconds
  double misfire_prob = 0.0;       // chance a scheduled firing stays silent

  // Noise std in phase units; used by every closed form and the simulator.
  double normalized_sigma_delta() const { return sigma_delta_s / period_s; }

  void validate() const {
    if (w < 2) throw std::invalid_argument("w must be at least 2");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("alpha must lie in (0, 1), got " +
                                  std::to_string(alpha));
    if (!(b_thres > 0.0 && b_thres < 0.5))
      throw std::invalid_argument("b_thres must lie in (0, 0.5), got " +
                                  std::to_string(b_thres));
    if (!(c_conf > 0.0 && c_conf < 1.0))
      throw std::invalid_argument("c_conf must lie in (0, 1), got " +
                                  std::to_string(c_conf));
    if (!(period_s > 0.0))
      throw std::invalid_argument("period_s must be positive");
    if (!(sigma_delta_s >= 0.0))
      throw std::invalid_argument("sigma_delta_s must be non-negative");
    if (!(misfire_prob >= 0.0 && misfire_prob < 1.0))
      throw std::invalid_argument("misfire_prob must lie in [0, 1)");
    // Slot capacity: gaps of 1/w can only stay b_thres-accurate when w
    // slots of width b_thres fit strictly inside the ring.
    if (w >= static_cast<int>(std::floor(1.0 / b_thres)))
      throw std::invalid_argument(
          "w must be below floor(1/b_thres); too many nodes for this "
          "threshold");
  }
};

}  // namespace desynclab
