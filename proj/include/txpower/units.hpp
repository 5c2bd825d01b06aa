#pragma once

// Unit-safe power and frequency quantities. All chain arithmetic is done in
// linear milliwatts; dBm only appears at API and file boundaries.

#include <cmath>
#include <compare>
#include <string>

#include "txpower/error.hpp"

namespace txpower {

/// Power level in decibel-milliwatts. Any finite value.
class PowerDbm {
public:
    explicit PowerDbm(double dbm) : value_(dbm) {
        if (!std::isfinite(dbm)) {
            throw ValidationError("power in dBm must be finite");
        }
    }

    double value() const noexcept { return value_; }

    friend auto operator<=>(const PowerDbm&, const PowerDbm&) = default;

    // Lets `-15.0_dBm` read naturally.
    PowerDbm operator-() const { return PowerDbm(-value_); }

private:
    double value_;
};

/// Linear power in milliwatts. Finite and non-negative; zero is only meaningful
/// for differences and for an absent block.
class PowerMilliwatt {
public:
    explicit PowerMilliwatt(double mw) : value_(mw) {
        if (!std::isfinite(mw) || mw < 0.0) {
            throw ValidationError("power in mW must be finite and >= 0");
        }
    }

    double value() const noexcept { return value_; }

    friend auto operator<=>(const PowerMilliwatt&, const PowerMilliwatt&) = default;

    friend PowerMilliwatt operator+(PowerMilliwatt lhs, PowerMilliwatt rhs) {
        return PowerMilliwatt(lhs.value_ + rhs.value_);
    }

    // Throws when the difference would be negative.
    friend PowerMilliwatt operator-(PowerMilliwatt lhs, PowerMilliwatt rhs) {
        if (rhs.value_ > lhs.value_) {
            throw ValidationError("power difference would be negative");
        }
        return PowerMilliwatt(lhs.value_ - rhs.value_);
    }

private:
    double value_;
};

/// Operating frequency in gigahertz, strictly positive.
class FrequencyGhz {
public:
    explicit FrequencyGhz(double ghz) : value_(ghz) {
        if (!std::isfinite(ghz) || ghz <= 0.0) {
            throw ValidationError("frequency in GHz must be finite and > 0");
        }
    }

    double value() const noexcept { return value_; }

    friend auto operator<=>(const FrequencyGhz&, const FrequencyGhz&) = default;

private:
    double value_;
};

/// 10^(dBm/10). Always strictly positive (underflows are rejected).
inline PowerMilliwatt dbm_to_mw(PowerDbm p) {
    const double mw = std::pow(10.0, p.value() / 10.0);
    if (!(mw > 0.0) || !std::isfinite(mw)) {
        throw ValidationError("dBm value outside representable linear range");
    }
    return PowerMilliwatt(mw);
}

/// 10*log10(mW). Rejects zero power.
inline PowerDbm mw_to_dbm(PowerMilliwatt p) {
    if (p.value() <= 0.0) {
        throw ValidationError("cannot express non-positive power in dBm");
    }
    return PowerDbm(10.0 * std::log10(p.value()));
}

namespace literals {

inline PowerDbm operator""_dBm(long double v) { return PowerDbm(static_cast<double>(v)); }
inline PowerDbm operator""_dBm(unsigned long long v) { return PowerDbm(static_cast<double>(v)); }
inline PowerMilliwatt operator""_mW(long double v) { return PowerMilliwatt(static_cast<double>(v)); }
inline PowerMilliwatt operator""_mW(unsigned long long v) { return PowerMilliwatt(static_cast<double>(v)); }
inline FrequencyGhz operator""_GHz(long double v) { return FrequencyGhz(static_cast<double>(v)); }
inline FrequencyGhz operator""_GHz(unsigned long long v) { return FrequencyGhz(static_cast<double>(v)); }

}  // namespace literals

}  // namespace txpower
