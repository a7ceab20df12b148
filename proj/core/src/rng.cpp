#include "vinesense/rng.hpp"

#include <cmath>

namespace vinesense {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::next_u64() {
    state += 0x9e3779b97f4a7c15ull;
    return mix64(state);
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal(double mean, double stddev) {
    double u1 = 1.0 - next_unit();  // (0, 1], keeps the log finite
    double u2 = next_unit();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    return mean + stddev * z;
}

Vec3 RngStream::next_unit_vector() {
    double z = 2.0 * next_unit() - 1.0;
    double phi = 2.0 * kPi * next_unit();
    double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
    return Vec3{r * std::cos(phi), r * std::sin(phi), z};
}

std::uint64_t derive_stream(std::uint64_t seed, const char* tag, std::uint64_t index) {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ull);
    for (const char* p = tag; *p != '\0'; ++p) {
        h = mix64(h ^ static_cast<unsigned char>(*p));
    }
    return mix64(h ^ index);
}

}  // namespace vinesense
