#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace pairorbit {

/// Outcome of one adaptive integration drive.
enum class OdeStatus {
    reached_end,   // integrated to the requested endpoint
    event,         // stopped at a localized zero crossing of the event function
    step_underflow // |h| fell below 1e-14 without an event
};

/// Explicit embedded Runge-Kutta pair of order 8(5,3) (Dormand-Prince DOP853
/// coefficients) with 6th-order continuous output, adaptive step control and
/// bisection-based event localization on the dense interpolant.
///
/// The error norm can weight components in groups (e.g. a 2-vector's magnitude
/// protects its components through zero crossings): `group_of[i]` assigns each
/// state index to a weight group; the scale of group g is
/// tol * (0.01 + max(|y|) over the group). With no grouping every component is
/// its own group, which reduces to the usual elementwise Hairer weights.
template <int N>
class Dop853 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    // step-control constants (safety factor per the standard published values)
    static constexpr double safety = 0.9;
    static constexpr double initial_step = 1e-4;
    static constexpr double min_step = 1e-14;

    explicit Dop853(Rhs rhs, double tol) : rhs_(std::move(rhs)), tol_(tol) {
        for (int i = 0; i < N; ++i)
            group_of_[i] = i;
    }

    void set_groups(const std::array<int, N>& groups) { group_of_ = groups; }

    /// Called after every accepted step with [t_prev, t_curr]; return false to
    /// stop the drive (status stays reached_end with t_end = t_curr).
    using StepCallback = std::function<bool(const Dop853&)>;

    /// Event function g(t, y); integration stops where g crosses zero going
    /// negative, localized to 1e-10 in t.
    using EventFn = std::function<double(double, const State&)>;

    /// Integrates from (t0, y0) to t1 (t1 < t0 integrates backward).
    OdeStatus drive(double t0, const State& y0, double t1,
                    const StepCallback& on_step = {}, const EventFn& event = {}) {
        t_prev_ = t_curr_ = t_step_end_ = t0;
        y_prev_ = y_curr_ = y0;
        rhs_(t_curr_, y_curr_, k_[0]);
        const double dir = t1 >= t0 ? 1.0 : -1.0;
        double h = dir * initial_step;
        double g_prev = event ? event(t_curr_, y_curr_) : 1.0;

        while (dir * (t1 - t_curr_) > 0.0) {
            if (dir * h > dir * (t1 - t_curr_))
                h = t1 - t_curr_;
            if (std::fabs(h) < min_step)
                return OdeStatus::step_underflow;
            const double err = attempt_step(h);
            double fac = safety * std::pow(std::max(err, 1e-32), -1.0 / 8.0);
            fac = std::clamp(fac, 1.0 / 3.0, 6.0);
            if (err > 1.0) {
                h *= std::min(fac, 1.0);
                continue;
            }
            accept_step(h);
            h *= fac;

            if (event) {
                const double g_curr = event(t_curr_, y_curr_);
                if (g_prev > 0.0 && g_curr <= 0.0) {
                    locate_event(event);
                    return OdeStatus::event;
                }
                g_prev = g_curr;
            }
            if (on_step && !on_step(*this))
                break;
        }
        return OdeStatus::reached_end;
    }

    double t_prev() const { return t_prev_; }
    double t_curr() const { return t_curr_; }
    const State& y_curr() const { return y_curr_; }

    /// Dense-output evaluation inside the last accepted step [t_prev, t_curr].
    State interpolate(double t) const {
        const double span = t_step_end_ - t_prev_;
        const double s = span != 0.0 ? (t - t_prev_) / span : 0.0;
        const double s1 = 1.0 - s;
        State y;
        for (int i = 0; i < N; ++i)
            y[i] = rc_[0][i] +
                   s * (rc_[1][i] +
                        s1 * (rc_[2][i] +
                              s * (rc_[3][i] +
                                   s1 * (rc_[4][i] +
                                         s * (rc_[5][i] +
                                              s1 * (rc_[6][i] + s * rc_[7][i]))))));
        return y;
    }

private:
    // tableau (Hairer, Norsett & Wanner; 12 stages + FSAL evaluation)
    static constexpr double c2 = 0.05260015195876773187856,
                            c3 = 0.07890022793815159781784,
                            c4 = 0.11835034190722739672676,
                            c5 = 0.28164965809277260327324,
                            c6 = 0.33333333333333333333333,
                            c7 = 0.25,
                            c8 = 0.30769230769230769230769,
                            c9 = 0.65128205128205128205128,
                            c10 = 0.6,
                            c11 = 0.85714285714285714285714;
    static constexpr double b1 = 0.05429373411656876223805,
                            b6 = 4.45031289275240888144114,
                            b7 = 1.89151789931450038304282,
                            b8 = -5.80120396001058478146721,
                            b9 = 0.31116436695781989440892,
                            b10 = -0.15216094966251607855618,
                            b11 = 0.20136540080403034837478,
                            b12 = 0.04471061572777259051769;
    static constexpr double bhh1 = 0.24409448818897637795276,
                            bhh2 = 0.73384668828161185734136,
                            bhh3 = 0.02205882352941176470588;
    static constexpr double er1 = 0.01312004499419488073250,
                            er6 = -1.22515644637620444072057,
                            er7 = -0.49575894965725019152141,
                            er8 = 1.66437718245498653696153,
                            er9 = -0.35032884874997368168865,
                            er10 = 0.33417911871301747902973,
                            er11 = 0.08192320648511571246571,
                            er12 = -0.02235530786388629525884;
    static constexpr double a21 = 0.05260015195876773187856,
                            a31 = 0.01972505698453789945446,
                            a32 = 0.05917517095361369836338,
                            a41 = 0.02958758547680684918169,
                            a43 = 0.08876275643042054754507,
                            a51 = 0.24136513415926668550237,
                            a53 = -0.88454947932828608534486,
                            a54 = 0.92483400326179200311574,
                            a61 = 0.03703703703703703703704,
                            a64 = 0.17082860872947387127960,
                            a65 = 0.12546768756682242501669,
                            a71 = 0.03710937500000000000000,
                            a74 = 0.17025221101954403931498,
                            a75 = 0.06021653898045596068502,
                            a76 = -0.01757812500000000000000,
                            a81 = 0.03709200011850479271088,
                            a84 = 0.17038392571223999381021,
                            a85 = 0.10726203044637328465181,
                            a86 = -0.01531943774862440175279,
                            a87 = 0.00827378916381402288758,
                            a91 = 0.62411095871607571711443,
                            a94 = -3.36089262944694129406857,
                            a95 = -0.86821934684172600681819,
                            a96 = 27.5920996994467083049416,
                            a97 = 20.1540675504778934086187,
                            a98 = -43.4898841810699588477366,
                            a101 = 0.47766253643826436589043,
                            a104 = -2.48811461997166764192642,
                            a105 = -0.59029082683684299637145,
                            a106 = 21.2300514481811942347289,
                            a107 = 15.2792336328824235832597,
                            a108 = -33.2882109689848629194453,
                            a109 = -0.02033120170850862613582,
                            a111 = -0.93714243008598732571704,
                            a114 = 5.18637242884406370830024,
                            a115 = 1.09143734899672957818500,
                            a116 = -8.14978701074692612513997,
                            a117 = -18.5200656599969598641566,
                            a118 = 22.7394870993505042818970,
                            a119 = 2.49360555267965238987089,
                            a1110 = -3.04676447189821950038237,
                            a121 = 2.27331014751653820792360,
                            a124 = -10.5344954667372501984067,
                            a125 = -2.00087205822486249909676,
                            a126 = -17.9589318631187989172766,
                            a127 = 27.9488845294199600508500,
                            a128 = -2.85899827713502369474066,
                            a129 = -8.87285693353062954433549,
                            a1210 = 12.3605671757943030647266,
                            a1211 = 0.64339274601576353035597;
    // three extra stages of the 7th-order continuous extension
    static constexpr double c14 = 0.1, c15 = 0.2, c16 = 7.0 / 9.0;
    static constexpr double e14_1 = 0.056167502283047954,
                            e14_7 = 0.25350021021662483,
                            e14_8 = -0.2462390374708025,
                            e14_9 = -0.12419142326381637,
                            e14_10 = 0.15329179827876568,
                            e14_11 = 0.0082010522956346907,
                            e14_12 = 0.0075678976605456994,
                            e14_13 = -0.0082979999999999998,
                            e15_1 = 0.031834648163502142,
                            e15_6 = 0.028300909672366776,
                            e15_7 = 0.053541988307438566,
                            e15_8 = -0.054923748571390991,
                            e15_11 = -0.00010834732869724932,
                            e15_12 = 0.00038257109083565839,
                            e15_13 = -0.00034046500868740456,
                            e15_14 = 0.1413124436746325,
                            e16_1 = -0.42889630158379194,
                            e16_6 = -4.697621415361164,
                            e16_7 = 7.6834211960625991,
                            e16_8 = 4.0689898183971103,
                            e16_9 = 0.35672718745528109,
                            e16_13 = -0.0013990241651590145,
                            e16_14 = 2.9475147891527724,
                            e16_15 = -9.1509584721798696;
    // dense-output rows over stages k1..k16
    static constexpr double dd4_1 = -8.4289382761090135,
                            dd4_6 = 0.56671495351937773,
                            dd4_7 = -3.0689499459498917,
                            dd4_8 = 2.3846676565120699,
                            dd4_9 = 2.1170345824450281,
                            dd4_10 = -0.87139158377797299,
                            dd4_11 = 2.2404374302607883,
                            dd4_12 = 0.63157877876946877,
                            dd4_13 = -0.088990336451333307,
                            dd4_14 = 18.148505520854727,
                            dd4_15 = -9.194632392478356,
                            dd4_16 = -4.4360363875948936,
                            dd5_1 = 10.427508642579134,
                            dd5_6 = 242.28349177525817,
                            dd5_7 = 165.20045171727028,
                            dd5_8 = -374.5467547226902,
                            dd5_9 = -22.113666853125306,
                            dd5_10 = 7.7334326684722638,
                            dd5_11 = -30.674084731089398,
                            dd5_12 = -9.3321305264302286,
                            dd5_13 = 15.697238121770845,
                            dd5_14 = -31.139403219565178,
                            dd5_15 = -9.3529243588444793,
                            dd5_16 = 35.816841486394082,
                            dd6_1 = 19.985053242002433,
                            dd6_6 = -387.03730874935178,
                            dd6_7 = -189.17813819516758,
                            dd6_8 = 527.80815920542364,
                            dd6_9 = -11.573902539959629,
                            dd6_10 = 6.8812326946963003,
                            dd6_11 = -1.0006050966910838,
                            dd6_12 = 0.77771377980534429,
                            dd6_13 = -2.7782057523535082,
                            dd6_14 = -60.196695231264123,
                            dd6_15 = 84.320405506677162,
                            dd6_16 = 11.992291136182789,
                            dd7_1 = -25.69393346270375,
                            dd7_6 = -154.18974869023643,
                            dd7_7 = -231.5293791760455,
                            dd7_8 = 357.63911791061412,
                            dd7_9 = 93.405324183624316,
                            dd7_10 = -37.458323136451632,
                            dd7_11 = 104.0996495089623,
                            dd7_12 = 29.840293426660502,
                            dd7_13 = -43.533456590011141,
                            dd7_14 = 96.324553959188279,
                            dd7_15 = -39.177261675615441,
                            dd7_16 = -149.72683625798564;

    // returns the scaled error of the trial step; fills ynew_/k_ stages
    double attempt_step(double h) {
        const State& y = y_curr_;
        const double t = t_curr_;
        State yt;
        auto stage = [&](double c, int idx) { rhs_(t + c * h, yt, k_[idx]); };

        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * a21 * k_[0][i];
        stage(c2, 1);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a31 * k_[0][i] + a32 * k_[1][i]);
        stage(c3, 2);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a41 * k_[0][i] + a43 * k_[2][i]);
        stage(c4, 3);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a51 * k_[0][i] + a53 * k_[2][i] + a54 * k_[3][i]);
        stage(c5, 4);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a61 * k_[0][i] + a64 * k_[3][i] + a65 * k_[4][i]);
        stage(c6, 5);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a71 * k_[0][i] + a74 * k_[3][i] + a75 * k_[4][i] +
                                a76 * k_[5][i]);
        stage(c7, 6);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a81 * k_[0][i] + a84 * k_[3][i] + a85 * k_[4][i] +
                                a86 * k_[5][i] + a87 * k_[6][i]);
        stage(c8, 7);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a91 * k_[0][i] + a94 * k_[3][i] + a95 * k_[4][i] +
                                a96 * k_[5][i] + a97 * k_[6][i] + a98 * k_[7][i]);
        stage(c9, 8);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a101 * k_[0][i] + a104 * k_[3][i] + a105 * k_[4][i] +
                                a106 * k_[5][i] + a107 * k_[6][i] + a108 * k_[7][i] +
                                a109 * k_[8][i]);
        stage(c10, 9);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a111 * k_[0][i] + a114 * k_[3][i] + a115 * k_[4][i] +
                                a116 * k_[5][i] + a117 * k_[6][i] + a118 * k_[7][i] +
                                a119 * k_[8][i] + a1110 * k_[9][i]);
        stage(c11, 10);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a121 * k_[0][i] + a124 * k_[3][i] + a125 * k_[4][i] +
                                a126 * k_[5][i] + a127 * k_[6][i] + a128 * k_[7][i] +
                                a129 * k_[8][i] + a1210 * k_[9][i] + a1211 * k_[10][i]);
        stage(1.0, 11);

        for (int i = 0; i < N; ++i) {
            ksum_[i] = b1 * k_[0][i] + b6 * k_[5][i] + b7 * k_[6][i] + b8 * k_[7][i] +
                       b9 * k_[8][i] + b10 * k_[9][i] + b11 * k_[10][i] + b12 * k_[11][i];
            ynew_[i] = y[i] + h * ksum_[i];
        }

        // group-aware error weights
        std::array<double, N> group_scale;
        group_scale.fill(0.0);
        for (int i = 0; i < N; ++i) {
            const int g = group_of_[i];
            group_scale[g] = std::max(group_scale[g],
                                      std::max(std::fabs(y[i]), std::fabs(ynew_[i])));
        }
        double err5 = 0.0, err3 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double sk = tol_ * (0.01 + group_scale[group_of_[i]]);
            double e = ksum_[i] - bhh1 * k_[0][i] - bhh2 * k_[8][i] - bhh3 * k_[11][i];
            e /= sk;
            err3 += e * e;
            e = (er1 * k_[0][i] + er6 * k_[5][i] + er7 * k_[6][i] + er8 * k_[7][i] +
                 er9 * k_[8][i] + er10 * k_[9][i] + er11 * k_[10][i] + er12 * k_[11][i]) /
                sk;
            err5 += e * e;
        }
        double den = err5 + 0.01 * err3;
        if (den <= 0.0)
            den = 1.0;
        return std::fabs(h) * err5 / std::sqrt(den * N);
    }

    void accept_step(double h) {
        const double t = t_curr_;
        const State& y = y_curr_;
        State k13, k14, k15, k16, yt;
        rhs_(t + h, ynew_, k13); // FSAL derivative at the new point

        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (e14_1 * k_[0][i] + e14_7 * k_[6][i] + e14_8 * k_[7][i] +
                                e14_9 * k_[8][i] + e14_10 * k_[9][i] + e14_11 * k_[10][i] +
                                e14_12 * k_[11][i] + e14_13 * k13[i]);
        rhs_(t + c14 * h, yt, k14);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (e15_1 * k_[0][i] + e15_6 * k_[5][i] + e15_7 * k_[6][i] +
                                e15_8 * k_[7][i] + e15_11 * k_[10][i] + e15_12 * k_[11][i] +
                                e15_13 * k13[i] + e15_14 * k14[i]);
        rhs_(t + c15 * h, yt, k15);
        for (int i = 0; i < N; ++i)
            yt[i] = y[i] + h * (e16_1 * k_[0][i] + e16_6 * k_[5][i] + e16_7 * k_[6][i] +
                                e16_8 * k_[7][i] + e16_9 * k_[8][i] + e16_13 * k13[i] +
                                e16_14 * k14[i] + e16_15 * k15[i]);
        rhs_(t + c16 * h, yt, k16);

        for (int i = 0; i < N; ++i) {
            const double ydiff = ynew_[i] - y[i];
            const double bspl = h * k_[0][i] - ydiff;
            rc_[0][i] = y[i];
            rc_[1][i] = ydiff;
            rc_[2][i] = bspl;
            rc_[3][i] = ydiff - h * k13[i] - bspl;
            rc_[4][i] = h * (dd4_1 * k_[0][i] + dd4_6 * k_[5][i] + dd4_7 * k_[6][i] +
                             dd4_8 * k_[7][i] + dd4_9 * k_[8][i] + dd4_10 * k_[9][i] +
                             dd4_11 * k_[10][i] + dd4_12 * k_[11][i] + dd4_13 * k13[i] +
                             dd4_14 * k14[i] + dd4_15 * k15[i] + dd4_16 * k16[i]);
            rc_[5][i] = h * (dd5_1 * k_[0][i] + dd5_6 * k_[5][i] + dd5_7 * k_[6][i] +
                             dd5_8 * k_[7][i] + dd5_9 * k_[8][i] + dd5_10 * k_[9][i] +
                             dd5_11 * k_[10][i] + dd5_12 * k_[11][i] + dd5_13 * k13[i] +
                             dd5_14 * k14[i] + dd5_15 * k15[i] + dd5_16 * k16[i]);
            rc_[6][i] = h * (dd6_1 * k_[0][i] + dd6_6 * k_[5][i] + dd6_7 * k_[6][i] +
                             dd6_8 * k_[7][i] + dd6_9 * k_[8][i] + dd6_10 * k_[9][i] +
                             dd6_11 * k_[10][i] + dd6_12 * k_[11][i] + dd6_13 * k13[i] +
                             dd6_14 * k14[i] + dd6_15 * k15[i] + dd6_16 * k16[i]);
            rc_[7][i] = h * (dd7_1 * k_[0][i] + dd7_6 * k_[5][i] + dd7_7 * k_[6][i] +
                             dd7_8 * k_[7][i] + dd7_9 * k_[8][i] + dd7_10 * k_[9][i] +
                             dd7_11 * k_[10][i] + dd7_12 * k_[11][i] + dd7_13 * k13[i] +
                             dd7_14 * k14[i] + dd7_15 * k15[i] + dd7_16 * k16[i]);
        }
        t_prev_ = t_curr_;
        y_prev_ = y_curr_;
        t_curr_ += h;
        t_step_end_ = t_curr_;
        y_curr_ = ynew_;
        k_[0] = k13;
    }

    void locate_event(const EventFn& event) {
        double lo = t_prev_, hi = t_curr_;
        double g_lo = event(lo, y_prev_);
        while (std::fabs(hi - lo) > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            const double g_mid = event(mid, interpolate(mid));
            if ((g_lo > 0.0) == (g_mid > 0.0)) {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
        }
        t_curr_ = hi;
        y_curr_ = interpolate(hi);
        rhs_(t_curr_, y_curr_, k_[0]);
    }

    Rhs rhs_;
    double tol_;
    std::array<int, N> group_of_{};
    double t_prev_ = 0.0, t_curr_ = 0.0, t_step_end_ = 0.0;
    State y_prev_{}, y_curr_{}, ynew_{}, ksum_{};
    std::array<State, 12> k_{};
    std::array<State, 8> rc_{};
};

} // namespace pairorbit
