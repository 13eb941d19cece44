#pragma once

#include <optional>
#include <string>

#include "ballasy/geometry.hpp"
#include "ballasy/quadrature.hpp"

namespace ballasy {

// The integral families of the estimate table. Parameter names follow the
// table: delta weights (1-|z|^2)^delta, t and r are the kernel exponents of
// the w- and second-point factors, c shifts single-point exponents, k is the
// logarithm power.
enum class FamilyTag {
  PropA_I,   // sphere, |1-<xi,w>|^{-(n+c)}
  PropA_J,   // ball, (1-|z|^2)^t |1-<z,w>|^{-(n+1+t+c)}
  P31_G,     // sphere, |1-<xi,w>|^{-(n+c)} |Log(e/(1-<xi,w>))|^k
  P31_F,     // ball, (1-|z|^2)^delta |1-<z,w>|^{-(n+1+delta+c)} |Log(e/(1-<z,w>))|^k
  PropB,     // ball, (1-|z|^2)^delta |1-<z,w>|^{-t} |1-<z,a>|^{-r} log^k(e/(1-|z|^2))
  PropC,     // sphere, |1-<xi,w>|^{-(n+t)} |1-<xi,a>|^{-(n+r)}
  P32,       // ball, PropB shape with |Log(e/(1-<z,eta>))|^{-k} log^k(e/(1-|z|^2))
  L22,       // sphere, |1-<xi,w>|^{-t} |1-<xi,eta>|^{-r} log^k(e/|1-<xi,eta>|)
  L21_I1,    // radial, (1-r)^delta (1-r rho)^{-(delta+1+c)} log^k(e/(1-rho r))
  L21_I2,    // radial, same kernel with log^k(e(1-rho r)/(1-rho))
};

const char* to_string(FamilyTag tag);

// Two evaluation conventions for the log factor: the complex-argument modulus
// |Log(e/u)|^k as displayed in the single-point statements, and the plain
// modulus form log^k(e/|u|) used in the proofs.
enum class LogForm { complex_abs, modulus };

struct KernelFamily {
  FamilyTag tag;
  int n = 1;
  double delta = 0, t = 0, r = 0, c = 0, k = 0;
  LogForm log_form = LogForm::complex_abs;

  static KernelFamily propA_I(int n, double c);
  static KernelFamily propA_J(int n, double t, double c);
  static KernelFamily p31_G(int n, double c, double k);
  static KernelFamily p31_F(int n, double delta, double c, double k);
  static KernelFamily propB(int n, double delta, double t, double r, double k);
  static KernelFamily propC(int n, double t, double r);
  static KernelFamily p32(int n, double delta, double t, double r, double k);
  static KernelFamily l22(int n, double t, double r, double k);
  static KernelFamily l21_I1(double delta, double c, double k);
  static KernelFamily l21_I2(double delta, double c, double k);

  bool is_radial() const { return tag == FamilyTag::L21_I1 || tag == FamilyTag::L21_I2; }
  bool is_sphere() const {
    return tag == FamilyTag::PropA_I || tag == FamilyTag::P31_G || tag == FamilyTag::PropC ||
           tag == FamilyTag::L22;
  }
  bool is_two_point() const {
    return tag == FamilyTag::PropB || tag == FamilyTag::PropC || tag == FamilyTag::P32 ||
           tag == FamilyTag::L22;
  }
  std::string describe() const;
};

// Evaluation points: w (plus the second point for two-point families), or rho
// for the radial families.
struct PointPair {
  CPoint w;
  std::optional<CPoint> second;
  std::optional<double> rho;

  static PointPair single(CPoint w);
  static PointPair pair(CPoint w, CPoint a);
  static PointPair radial(double rho);
};

// |Log(e/u)|^k with the principal branch (or log^k(e/|u|) in modulus form);
// u = 0 means boundary contact and throws.
double log_factor(Cx u, double k, LogForm form = LogForm::complex_abs);

// The raw integrand of the family at z (sphere point or ball point), used by
// the Monte Carlo route and by cross-checks.
double family_integrand(const KernelFamily& fam, const PointPair& pts, const CPoint& z);

// Exact evaluation of the family's integral. Single-point families and
// two-point families whose points span one complex line are reduced to disk /
// circle quadrature; other two-point geometries go through Monte Carlo.
IntegrationResult eval_lhs(const KernelFamily& fam, const PointPair& pts, const QuadConfig& cfg);

}  // namespace ballasy
