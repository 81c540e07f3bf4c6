#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Finite-resolution model of the dyadic (Walsh) group: the first M binary
// coordinates are retained, so the group is Z_2^M acting on 2^M atoms.
// Coordinate x_k is bit k of the atom index (x_0 = least significant bit);
// under this convention the depth-n intervals I_n are residue classes mod 2^n.

namespace wn {

inline constexpr int kMaxResolution = 24;

class Resolution {
public:
    explicit Resolution(int bits);

    int bits() const { return bits_; }
    std::size_t atoms() const { return std::size_t{1} << bits_; }

    friend bool operator==(Resolution a, Resolution b) { return a.bits_ == b.bits_; }
    friend bool operator!=(Resolution a, Resolution b) { return a.bits_ != b.bits_; }

private:
    int bits_;
};

struct GroupElement {
    Resolution resolution;
    std::uint32_t index;   // < 2^M, bit k = coordinate x_k
};

GroupElement group_element(Resolution M, std::uint32_t index);
GroupElement identity(Resolution M);

// e_t: the element with coordinate x_t = 1 and all others 0.
GroupElement unit_vector(int t, Resolution M);

// Coordinatewise addition mod 2; every element is its own inverse.
GroupElement group_add(const GroupElement& a, const GroupElement& b);

struct DyadicInterval {
    int depth;              // n; I_0 is the whole group
    std::uint32_t residue;  // the fixed first-n coordinates, < 2^n
};

DyadicInterval dyadic_interval(int depth, std::uint32_t residue);

// I_n(x): the depth-n interval containing x.
DyadicInterval interval_around(const GroupElement& x, int depth);

bool interval_contains(const DyadicInterval& interval, const GroupElement& x);

// Haar measure of a depth-n interval, 2^{-n}.
double interval_measure(const DyadicInterval& interval);

// Piecewise-constant representative of a function on the group: one value per
// atom of depth M. Everything supported on frequencies < 2^M is exact.
struct StepFunction {
    explicit StepFunction(Resolution M) : resolution(M), values(M.atoms(), 0.0) {}
    StepFunction(Resolution M, std::vector<double> v);

    Resolution resolution;
    std::vector<double> values;
};

StepFunction constant_function(Resolution M, double c);
StepFunction indicator(const DyadicInterval& interval, Resolution M);

// f(. + t); an involution since t + t = 0.
StepFunction translate(const StepFunction& f, const GroupElement& t);

// Integral against the normalized Haar measure: 2^{-M} * sum of values.
double integrate(const StepFunction& f);
double integrate_abs(const StepFunction& f);

StepFunction operator+(const StepFunction& f, const StepFunction& g);
StepFunction operator-(const StepFunction& f, const StepFunction& g);
StepFunction operator*(double c, const StepFunction& f);
StepFunction pointwise_product(const StepFunction& f, const StepFunction& g);

double max_abs(const StepFunction& f);
double max_abs_diff(const StepFunction& f, const StepFunction& g);

// CSV: header "# resolution=M", then one value per line, exactly 2^M lines.
void write_csv(std::ostream& out, const StepFunction& f);
void write_csv(const std::string& path, const StepFunction& f);
StepFunction read_step_function_csv(std::istream& in);
StepFunction read_step_function_csv(const std::string& path);

// "%.17g" rendering used by every CSV writer so reruns are byte-identical.
std::string format_value(double x);

// Atomic file write: temp file in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& contents);

}  // namespace wn
