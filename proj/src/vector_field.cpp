#include "cvcorr/vector_field.hpp"

#include <Eigen/Eigenvalues>

#include <array>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cvcorr {

namespace {

// Field amplitudes are spatial-major (polarization fastest); the coherence
// matrix and all sigma_j x sigma_k tensors are polarization-major.
Eigen::Vector4cd pol_major(const Eigen::Vector4cd& v) {
    Eigen::Vector4cd w;
    w << v(0), v(2), v(1), v(3);
    return w;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

}  // namespace

TDoFField TDoFField::normalized() const {
    const double n = std::sqrt(norm2());
    if (n <= 0.0) throw std::invalid_argument("zero field");
    TDoFField f = *this;
    f.amplitudes /= n;
    return f;
}

TDoFField TDoFField::radial() {
    TDoFField f;
    f.basis = FieldBasis::HermiteGauss;
    f.amplitudes << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    return f;
}

void CoherenceMatrix4::validate() const {
    if ((gamma - gamma.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("coherence matrix must be Hermitian");
    if (gamma.trace().real() <= 0.0)
        throw std::invalid_argument("coherence matrix must have positive trace");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(gamma);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("coherence matrix must be positive semidefinite");
}

CoherenceMatrix4 CoherenceMatrix4::normalized() const {
    const double tr = gamma.trace().real();
    if (tr <= 0.0) throw std::invalid_argument("zero-trace coherence matrix");
    return {gamma / tr};
}

const Eigen::Matrix2cd& pauli(int j) {
    static const std::array<Eigen::Matrix2cd, 4> sigma = [] {
        std::array<Eigen::Matrix2cd, 4> s;
        const std::complex<double> i(0.0, 1.0);
        s[0] << 1, 0, 0, 1;
        s[1] << 1, 0, 0, -1;
        s[2] << 0, -i, i, 0;
        s[3] << 0, 1, 1, 0;
        return s;
    }();
    return sigma.at(j);
}

CoherenceMatrix4 coherence_matrix(const std::vector<TDoFField>& fields,
                                  const std::vector<double>& weights) {
    if (fields.empty()) throw std::invalid_argument("no fields");
    std::vector<double> w = weights;
    if (w.empty()) w.assign(fields.size(), 1.0 / fields.size());
    if (w.size() != fields.size())
        throw std::invalid_argument("weights/fields size mismatch");
    double sum = 0.0;
    for (double wk : w) {
        if (wk < 0.0) throw std::invalid_argument("weights must be >= 0");
        sum += wk;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("weights must sum to 1");

    CoherenceMatrix4 g;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        const Eigen::Vector4cd psi = pol_major(fields[k].normalized().amplitudes);
        g.gamma += w[k] * psi * psi.adjoint();
    }
    return g;
}

namespace {

Eigen::Matrix2cd reduce_dof(const Eigen::Matrix4cd& g, int kept) {
    // kept = 0 traces out the spatial slot, kept = 1 the polarization slot.
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int t = 0; t < 2; ++t)
                r(a, b) += kept == 0 ? g(a * 2 + t, b * 2 + t) : g(t * 2 + a, t * 2 + b);
    return r;
}

}  // namespace

double entanglement_degree_sq(const CoherenceMatrix4& gamma, int which_dof) {
    if (which_dof != 0 && which_dof != 1)
        throw std::invalid_argument("which_dof must be 0 or 1");
    const Eigen::Matrix2cd r = reduce_dof(gamma.gamma, which_dof);
    const double tr = r.trace().real();
    const double tr2 = (r * r).trace().real();
    return std::clamp(2.0 * (1.0 - tr2 / (tr * tr)), 0.0, 1.0);
}

double entanglement_degree(const CoherenceMatrix4& gamma, int which_dof) {
    return std::sqrt(entanglement_degree_sq(gamma, which_dof));
}

double polarization_degree(const CoherenceMatrix4& gamma) {
    const Eigen::Matrix2cd rho = reduce_dof(gamma.gamma, 0);
    double s[4];
    for (int j = 0; j < 4; ++j) s[j] = (rho * pauli(j)).trace().real();
    return std::sqrt(s[1] * s[1] + s[2] * s[2] + s[3] * s[3]) / s[0];
}

CoherencePredictability coherence_and_predictability(const CoherenceMatrix4& gamma) {
    const Eigen::Matrix4cd& g = gamma.gamma;
    const double i1 = (g(0, 0) + g(2, 2)).real();   // intensity at x1
    const double i2 = (g(1, 1) + g(3, 3)).real();   // intensity at x2
    if (i1 <= 0.0 || i2 <= 0.0)
        throw std::invalid_argument("trace coherence undefined: zero intensity at a point");
    const std::complex<double> cross = g(0, 1) + g(2, 3);  // tr over polarization
    return {cross / std::sqrt(i1 * i2), (i1 - i2) / (i1 + i2)};
}

double verify_entanglement_identity(const TDoFField& field) {
    const CoherenceMatrix4 g = coherence_matrix({field});
    const double e2 = entanglement_degree_sq(g);
    const auto cp = coherence_and_predictability(g);
    const double rhs =
        (1.0 - cp.delta * cp.delta) * (1.0 - std::norm(cp.mu));
    return std::abs(e2 - rhs);
}

double schmidt_weight(const TDoFField& field) {
    const Eigen::Vector4cd a = field.normalized().amplitudes;
    Eigen::Matrix2cd m;
    m << a(0), a(1), a(2), a(3);  // rows: spatial, cols: polarization
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    double k = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double lam = svd.singularValues()(i) * svd.singularValues()(i);
        k += lam * lam;
    }
    return 1.0 / k;
}

double concurrence(const TDoFField& field) {
    const Eigen::Vector4cd a = field.normalized().amplitudes;
    return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

TDoFStokes tdof_stokes(const CoherenceMatrix4& gamma) {
    TDoFStokes s;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            s.s(j, k) = (gamma.gamma * kron2(pauli(j), pauli(k))).trace().real();
        }
    return s;
}

CoherenceMatrix4 tdof_stokes_inverse(const TDoFStokes& stokes) {
    CoherenceMatrix4 g;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            g.gamma += 0.25 * stokes.s(j, k) * kron2(pauli(j), pauli(k));
    return g;
}

MuellerMatrix mueller_of_jones(const Eigen::Matrix2cd& jones) {
    MuellerMatrix m;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            m.m(j, k) =
                0.5 * (pauli(j) * jones * pauli(k) * jones.adjoint()).trace().real();
    return m;
}

namespace {

// vec index a = 2*row + col of the 2x2 Jones matrix. The map A sends the
// coherency matrix T = sum_k w_k vec(J_k) vec(J_k)^+ to vec(M), entrywise
// A[(j,k),(a,b)] = (1/2) tr(sigma_j E_a sigma_k E_b^+).
const Eigen::Matrix<std::complex<double>, 16, 16>& coherency_map_inverse() {
    static const Eigen::Matrix<std::complex<double>, 16, 16> inv = [] {
        Eigen::Matrix<std::complex<double>, 16, 16> a;
        for (int ia = 0; ia < 4; ++ia)
            for (int ib = 0; ib < 4; ++ib) {
                Eigen::Matrix2cd ea = Eigen::Matrix2cd::Zero();
                Eigen::Matrix2cd eb = Eigen::Matrix2cd::Zero();
                ea(ia / 2, ia % 2) = 1.0;
                eb(ib / 2, ib % 2) = 1.0;
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        a(j * 4 + k, ia * 4 + ib) =
                            0.5 * (pauli(j) * ea * pauli(k) * eb.adjoint()).trace();
            }
        return a.inverse().eval();
    }();
    return inv;
}

}  // namespace

Eigen::Matrix4cd cloude_coherency(const MuellerMatrix& m) {
    Eigen::Matrix<std::complex<double>, 16, 1> vm;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) vm(j * 4 + k) = m.m(j, k);
    const Eigen::Matrix<std::complex<double>, 16, 1> vt = coherency_map_inverse() * vm;
    Eigen::Matrix4cd t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t(a, b) = vt(a * 4 + b);
    return 0.5 * (t + t.adjoint()).eval();
}

CloudeDecomposition cloude_decompose(const MuellerMatrix& m) {
    const Eigen::Matrix4cd t = cloude_coherency(m);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(t);
    CloudeDecomposition dec;
    dec.min_eigenvalue = es.eigenvalues().minCoeff();
    if (dec.min_eigenvalue < -1e-9)
        throw std::invalid_argument(
            "unphysical Mueller matrix: coherency eigenvalue " +
            std::to_string(dec.min_eigenvalue));
    for (int i = 0; i < 4; ++i) {
        const double ev = es.eigenvalues()(i);
        if (ev <= 1e-14) continue;
        const Eigen::Vector4cd v = std::sqrt(ev) * es.eigenvectors().col(i);
        Eigen::Matrix2cd j;
        j << v(0), v(1), v(2), v(3);
        dec.jones.push_back(j);
    }
    return dec;
}

CoherenceMatrix4 apply_mueller(const CoherenceMatrix4& gamma, const MuellerMatrix& m) {
    const CloudeDecomposition dec = cloude_decompose(m);
    CoherenceMatrix4 out;
    for (const Eigen::Matrix2cd& j : dec.jones) {
        const Eigen::Matrix4cd k = kron2(j, Eigen::Matrix2cd::Identity());
        out.gamma += k * gamma.gamma * k.adjoint();
    }
    return out;
}

MuellerMatrix recover_mueller_single_shot(const CoherenceMatrix4& gamma_out) {
    const TDoFStokes s = tdof_stokes(gamma_out);
    const double lambda[4] = {1.0, 1.0, -1.0, 1.0};
    MuellerMatrix m;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) m.m(j, k) = s.s(j, k) * lambda[k];
    return m;
}

MuellerMatrix conventional_polarimetry(const MuellerMatrix& m,
                                       const std::vector<StokesVector>& probes) {
    if (probes.size() < 4) throw std::invalid_argument("need four probe states");
    Eigen::Matrix4d p;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p(i, j) = probes[i].s[j];
    if (Eigen::FullPivLU<Eigen::Matrix4d>(p).rank() < 4)
        throw std::invalid_argument("probe Stokes vectors must span rank 4");

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(16, 16);
    Eigen::VectorXd y(16);
    for (int i = 0; i < 4; ++i) {
        const Eigen::Vector4d s_out = m.m * p.row(i).transpose();
        for (int j = 0; j < 4; ++j) {
            a.block<1, 4>(4 * i + j, 4 * j) = p.row(i);
            y(4 * i + j) = s_out(j);
        }
    }
    const Eigen::VectorXd x = a.fullPivLu().solve(y);
    MuellerMatrix rec;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) rec.m(j, k) = x(4 * j + k);
    return rec;
}

namespace {

constexpr double kEdgeRange = 3.0;
constexpr double kDomainHalf = 4.0;

// Gauss-Legendre nodes/weights on [-1, 1] via the Jacobi eigenproblem.
void legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        j(k, k - 1) = b;
        j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = 2.0 * v0 * v0;
    }
}

// Radial beam behind a knife edge blocking x < x0: transmitted intensities of
// the HG10 (H) and HG01 (V) components on a res x res Gauss-Legendre grid.
// The y integral keeps S2 = S3 = 0 by parity, so the Stokes vector is
// (I_H + I_V, I_H - I_V, 0, 0).
void masked_intensities(double x0, int res, double& i_h, double& i_v) {
    std::vector<double> t, w;
    legendre_rule(res, t, w);
    double gy0 = 0.0, gy2 = 0.0;
    for (int j = 0; j < res; ++j) {
        const double y = kDomainHalf * t[j];
        const double g = std::exp(-2.0 * y * y) * kDomainHalf * w[j];
        gy0 += g;
        gy2 += y * y * g;
    }
    const double half = 0.5 * (kDomainHalf - x0);
    double gx0 = 0.0, gx2 = 0.0;
    for (int i = 0; i < res; ++i) {
        const double x = x0 + half * (t[i] + 1.0);
        const double g = std::exp(-2.0 * x * x) * half * w[i];
        gx0 += g;
        gx2 += x * x * g;
    }
    i_h = 0.5 * gx2 * gy0;   // |HG10|^2 = x^2 exp(-2 r^2), half the power each
    i_v = 0.5 * gx0 * gy2;
}

// The normalized S1 is not invertible: truncating the far tail first lowers
// the conditional second moment of x, so S1/S0 dips to a minimum near
// x0 = -0.4 before rising. The transmitted-power fraction S0/I_total is
// strictly decreasing (dS0/dx0 = -(x0^2 + 1/4) e^{-2 x0^2} up to a positive
// constant), so the edge position is inverted from it instead.
struct Calibration {
    std::vector<double> x0;
    std::vector<double> s0;  // S0/I_total, strictly decreasing in x0
    double i_total = 0.0;
};

const Calibration& calibration_for(int res) {
    static std::map<int, Calibration> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(res);
    if (it != cache.end()) return it->second;

    Calibration cal;
    double ih, iv;
    masked_intensities(-kDomainHalf, res, ih, iv);  // unobstructed beam
    cal.i_total = ih + iv;
    const int n = 401;
    for (int i = 0; i < n; ++i) {
        const double x0 = -kEdgeRange + 2.0 * kEdgeRange * i / (n - 1);
        masked_intensities(x0, res, ih, iv);
        cal.x0.push_back(x0);
        cal.s0.push_back((ih + iv) / cal.i_total);
        if (i > 0 && cal.s0[i] >= cal.s0[i - 1])
            throw std::logic_error("kinematic calibration curve not monotone");
    }
    return cache.emplace(res, std::move(cal)).first->second;
}

}  // namespace

KinematicResult kinematic_sense(double x0, int resolution) {
    if (std::abs(x0) > kEdgeRange)
        throw std::invalid_argument("edge position outside calibrated range [-3, 3]");
    if (resolution < 201) throw std::invalid_argument("resolution must be >= 201");

    double ih, iv;
    masked_intensities(x0, resolution, ih, iv);
    KinematicResult res;
    res.stokes.s[0] = ih + iv;
    res.stokes.s[1] = ih - iv;

    const Calibration& cal = calibration_for(resolution);
    const double s0 = res.stokes.s[0] / cal.i_total;
    if (s0 >= cal.s0.front()) {
        res.x0_hat = cal.x0.front();
    } else if (s0 <= cal.s0.back()) {
        res.x0_hat = cal.x0.back();
    } else {
        const auto it = std::lower_bound(cal.s0.begin(), cal.s0.end(), s0,
                                         std::greater<double>());
        const std::size_t i = it - cal.s0.begin();
        const double t = (s0 - cal.s0[i - 1]) / (cal.s0[i] - cal.s0[i - 1]);
        res.x0_hat = cal.x0[i - 1] + t * (cal.x0[i] - cal.x0[i - 1]);
    }
    return res;
}

}  // namespace cvcorr
