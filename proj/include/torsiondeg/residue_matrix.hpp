#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "torsiondeg/prime_power.hpp"

namespace torsiondeg {

// 2x2 matrix over Z/p^N with unit determinant, acting on column vectors from
// the left: v -> M v. Non-invertible matrices are rejected at construction.
// Entries are kept reduced into [0, p^N).
class ResidueMatrix {
 public:
  ResidueMatrix(const PrimePower& ctx, std::uint64_t a, std::uint64_t b,
                std::uint64_t c, std::uint64_t d)
      : ctx_(ctx),
        a_(static_cast<std::uint32_t>(a % ctx.modulus)),
        b_(static_cast<std::uint32_t>(b % ctx.modulus)),
        c_(static_cast<std::uint32_t>(c % ctx.modulus)),
        d_(static_cast<std::uint32_t>(d % ctx.modulus)) {
    if (det() % ctx_.p == 0)
      throw ArgumentError("matrix not invertible mod " + ctx.str() +
                          ": determinant " + std::to_string(det()) +
                          " is divisible by " + std::to_string(ctx.p));
  }

  static ResidueMatrix identity(const PrimePower& ctx) {
    return ResidueMatrix(ctx, 1, 0, 0, 1);
  }

  const PrimePower& context() const { return ctx_; }
  std::uint32_t a() const { return a_; }
  std::uint32_t b() const { return b_; }
  std::uint32_t c() const { return c_; }
  std::uint32_t d() const { return d_; }

  std::uint32_t det() const {
    std::uint64_t m = ctx_.modulus;
    std::uint64_t pos = static_cast<std::uint64_t>(a_) * d_ % m;
    std::uint64_t neg = static_cast<std::uint64_t>(b_) * c_ % m;
    return static_cast<std::uint32_t>((pos + m - neg) % m);
  }

  bool is_identity() const {
    return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1;
  }

  friend ResidueMatrix operator*(const ResidueMatrix& x, const ResidueMatrix& y) {
    if (x.ctx_ != y.ctx_)
      throw StructuralError("matrix product across contexts " + x.ctx_.str() +
                            " and " + y.ctx_.str());
    std::uint64_t m = x.ctx_.modulus;
    auto mul = [m](std::uint64_t u, std::uint64_t v) { return u * v % m; };
    return ResidueMatrix(
        x.ctx_, (mul(x.a_, y.a_) + mul(x.b_, y.c_)) % m,
        (mul(x.a_, y.b_) + mul(x.b_, y.d_)) % m,
        (mul(x.c_, y.a_) + mul(x.d_, y.c_)) % m,
        (mul(x.c_, y.b_) + mul(x.d_, y.d_)) % m);
  }

  // Adjugate times the inverse of the determinant.
  ResidueMatrix inverse() const {
    std::uint64_t m = ctx_.modulus;
    std::uint64_t di = mod_inverse(det(), ctx_.modulus);
    auto e = [&](std::uint64_t v) { return v * di % m; };
    return ResidueMatrix(ctx_, e(d_), e(m - b_ % m), e(m - c_ % m), e(a_));
  }

  // Entry-wise reduction to level k <= N.
  ResidueMatrix reduced(std::uint32_t k) const {
    if (k < 1 || k > ctx_.exponent)
      throw ArgumentError("reduction level " + std::to_string(k) +
                          " outside 1.." + std::to_string(ctx_.exponent));
    PrimePower sub(ctx_.p, k);
    return ResidueMatrix(sub, a_ % sub.modulus, b_ % sub.modulus,
                         c_ % sub.modulus, d_ % sub.modulus);
  }

  // Same entries read at a higher level. The lift of a unit stays a unit.
  ResidueMatrix lifted(std::uint32_t k) const {
    if (k < ctx_.exponent)
      throw ArgumentError("lift level below current level");
    return ResidueMatrix(PrimePower(ctx_.p, k), a_, b_, c_, d_);
  }

  ResidueMatrix transposed() const {
    return ResidueMatrix(ctx_, a_, c_, b_, d_);
  }

  // M * (x, y)^T.
  std::pair<std::uint32_t, std::uint32_t> apply(std::uint32_t x,
                                                std::uint32_t y) const {
    std::uint64_t m = ctx_.modulus;
    std::uint64_t u = (static_cast<std::uint64_t>(a_) * x +
                       static_cast<std::uint64_t>(b_) * y) % m;
    std::uint64_t v = (static_cast<std::uint64_t>(c_) * x +
                       static_cast<std::uint64_t>(d_) * y) % m;
    return {static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)};
  }

  friend bool operator==(const ResidueMatrix& x, const ResidueMatrix& y) {
    return x.ctx_ == y.ctx_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ &&
           x.d_ == y.d_;
  }
  friend bool operator!=(const ResidueMatrix& x, const ResidueMatrix& y) {
    return !(x == y);
  }

  std::string str() const {
    return "[[" + std::to_string(a_) + "," + std::to_string(b_) + "],[" +
           std::to_string(c_) + "," + std::to_string(d_) + "]]";
  }

 private:
  PrimePower ctx_;
  std::uint32_t a_, b_, c_, d_;
};

}  // namespace torsiondeg
