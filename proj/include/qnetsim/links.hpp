// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <deque>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qnetsim/kernel.hpp"
#include "qnetsim/photon.hpp"
#include "qnetsim/rng.hpp"

namespace qnetsim {

inline constexpr double kSpeedOfLight = 3e8;  // m/s

struct QuantumChannelParams {
  double length_km = 1;
  double n_core = 1.47;
  double alpha_db_per_km = 0.2;
  /// Chromatic dispersion in ps/(nm km).
  double d_chr = 17;
  double f_pol = 1;
  double p_depol = 0;
  double eta_c = 1;

  void validate() const {
    if (length_km < 0) throw ValidationError("channel length_km must be >= 0");
    if (!(n_core >= 1)) throw ValidationError("channel n_core must be >= 1");
    for (double p : {f_pol, p_depol, eta_c}) {
      if (p < 0 || p > 1) throw ValidationError("channel probabilities must be in [0,1]");
    }
    if (alpha_db_per_km < 0 || d_chr < 0) throw ValidationError("channel alpha and d_chr must be >= 0");
  }
};

struct ClassicalChannelParams {
  double length_km = 1;
  double n_core = 1.47;
};

inline double fiber_delay(double length_km, double n_core) { return length_km * 1e3 / (kSpeedOfLight / n_core); }

inline double qc_mean_delay(const QuantumChannelParams& p) { return fiber_delay(p.length_km, p.n_core); }

/// Spread of arrival times added by dispersion, in seconds.
inline double qc_temporal_width(const QuantumChannelParams& p, double source_linewidth_nm) {
  return p.d_chr * 1e-12 * source_linewidth_nm * p.length_km;
}

inline double qc_transmittance(const QuantumChannelParams& p) {
  return std::pow(10.0, -p.alpha_db_per_km * p.length_km / 10.0);
}

/// Loss and timing part of a fiber pass. Returns false when the photon is lost.
inline bool qc_propagate(const QuantumChannelParams& p, Photon& photon, RngStream& rng) {
  if (!rng.bernoulli(p.eta_c)) return false;
  if (!rng.bernoulli(qc_transmittance(p))) return false;
  const double t_mean = qc_mean_delay(p);
  const double w = qc_temporal_width(p, photon.linewidth_nm);
  double delay = t_mean + w * rng.normal();
  if (delay <= 0) delay = t_mean * 1e-6;
  photon.clock.advance(delay);
  photon.temporal_width_s += w;
  return true;
}

/**
 * Polarization noise of a fiber pass: with probability 1 - F_pol the state is
 * either rotated about its basis axis by a uniform angle or depolarized, with
 * equal odds. Depolarized states stay in density form.
 */
inline void qc_corrupt(const QuantumChannelParams& p, Photon& photon, RngStream& rng) {
  if (!rng.bernoulli(1.0 - p.f_pol)) return;
  const QuantumState& s = photon.state();
  if (rng.bernoulli(0.5)) {
    const double theta = 2 * std::numbers::pi * rng.uniform();
    photon.set_state(rotate(s, s.basis(), theta));
  } else {
    photon.set_state(depolarize(s, p.p_depol));
  }
}

/// Whole fiber pass: loss, delay, dispersion and noise.
inline bool qc_transmit(const QuantumChannelParams& p, Photon& photon, RngStream& rng) {
  if (!qc_propagate(p, photon, rng)) return false;
  qc_corrupt(p, photon, rng);
  return true;
}

// ---------------------------------------------------------------------------
// Classical channel messages.

enum class MessageTag : uint8_t {
  kBases = 1,
  kSiftIndices = 2,
  kCheckIndices = 3,
  kCheckBits = 4,
  kCascadeShuffle = 5,
  kCascadeParityRequest = 6,
  kCascadeParity = 7,
  kCascadeDone = 8,
  kToeplitzR = 9,
  kBsmResult = 10,
};

inline constexpr uint8_t kWireVersion = 0x01;

struct Message {
  MessageTag tag = MessageTag::kBases;
  std::vector<uint8_t> payload;

  bool operator==(const Message&) const = default;
};

/// Little-endian payload builder.
class PayloadWriter {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void bits(const std::vector<uint8_t>& b) {
    u32(static_cast<uint32_t>(b.size()));
    std::vector<uint8_t> packed((b.size() + 7) / 8, 0);
    for (size_t i = 0; i < b.size(); ++i) packed[i / 8] |= static_cast<uint8_t>((b[i] & 1) << (i % 8));
    buf_.insert(buf_.end(), packed.begin(), packed.end());
  }
  void indices(const std::vector<uint32_t>& idx) {
    u32(static_cast<uint32_t>(idx.size()));
    for (uint32_t v : idx) u32(v);
  }
  std::vector<uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<uint8_t> buf_;
};

class PayloadReader {
 public:
  explicit PayloadReader(const std::vector<uint8_t>& buf) : buf_(buf) {}

  uint8_t u8() {
    need(1);
    return buf_[pos_++];
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf_[pos_++]) << (8 * i);
    return v;
  }
  std::vector<uint8_t> bits() {
    const uint32_t n = u32();
    need((n + 7) / 8);
    std::vector<uint8_t> out(n);
    for (uint32_t i = 0; i < n; ++i) out[i] = (buf_[pos_ + i / 8] >> (i % 8)) & 1;
    pos_ += (n + 7) / 8;
    return out;
  }
  std::vector<uint32_t> indices() {
    const uint32_t n = u32();
    std::vector<uint32_t> out(n);
    for (auto& v : out) v = u32();
    return out;
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  void need(size_t n) const {
    if (pos_ + n > buf_.size()) throw ProtocolError("truncated message payload");
  }
  const std::vector<uint8_t>& buf_;
  size_t pos_ = 0;
};

/// Wire format: version byte, tag byte, u32 little-endian payload length, payload.
inline std::vector<uint8_t> encode_message(const Message& m) {
  PayloadWriter w;
  w.u8(kWireVersion);
  w.u8(static_cast<uint8_t>(m.tag));
  w.u32(static_cast<uint32_t>(m.payload.size()));
  auto out = w.take();
  out.insert(out.end(), m.payload.begin(), m.payload.end());
  return out;
}

inline Message decode_message(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 6) throw ProtocolError("message shorter than its header");
  if (bytes[0] != kWireVersion) throw ProtocolError("unknown wire version");
  PayloadReader r(bytes);
  r.u8();
  Message m;
  m.tag = static_cast<MessageTag>(r.u8());
  const uint32_t len = r.u32();
  if (bytes.size() != 6 + static_cast<size_t>(len)) throw ProtocolError("message length prefix mismatch");
  m.payload.assign(bytes.begin() + 6, bytes.end());
  return m;
}

/// Lossless delayed channel. Deliveries happen through timeline events, so
/// equal delays keep FIFO order via the insertion tie-break.
class ClassicalChannel {
 public:
  using Handler = std::function<void(const Message&)>;

  explicit ClassicalChannel(ClassicalChannelParams params) : params_(params) {}

  double delay() const { return fiber_delay(params_.length_km, params_.n_core); }
  const ClassicalChannelParams& params() const { return params_; }
  uint64_t messages_sent() const { return sent_; }

  EventHandle cc_send(Timeline& tl, const Message& m, Handler on_delivery) {
    ++sent_;
    auto bytes = encode_message(m);
    return tl.schedule(tl.now() + delay(), [bytes = std::move(bytes), h = std::move(on_delivery)] {
      h(decode_message(bytes));
    });
  }

  /// Sends and advances the timeline until the message arrives.
  Message transfer(Timeline& tl, const Message& m) {
    Message received;
    const double arrival = tl.now() + delay();
    cc_send(tl, m, [&received](const Message& msg) { received = msg; });
    tl.run_until(arrival);
    return received;
  }

 private:
  ClassicalChannelParams params_;
  uint64_t sent_ = 0;
};

}  // namespace qnetsim
