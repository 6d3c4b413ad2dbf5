"""
The checks run by `sphere-dubins verify`.

Each check measures one quantity (a drift, a residual, a minimum) and
compares it with a threshold. Checks that compare against a tolerance
accept an override, so that an absurdly tight tolerance makes them fail
and shows the measured value.
"""
from abc import ABCMeta, abstractmethod
from collections import OrderedDict

import numpy as np

from . import sdlogger
from .analysis import (AbnormalSolution, AdjointState, DELTA_L_PRIME_BOUND, ccc_inflection_angles, delta_l,
                       adjoint_flow, delta_l_prime, gc_nonoptimality_residual, hamiltonian,
                       lg_replacement_angles, lg_replacement_residual, phase_invariant,
                       replacement_path_error, simulate_extremal)
from .constants import CheckStatus, R_MAX_ANALYSIS, SegmentType
from .exceptions import DomainError
from .geometry import TurnRadius, geodesic_curvature, integrate_frame, segment_rotation


class CheckResult(object):

    def __init__(self, name, status, measured, tolerance, detail):
        assert status in CheckStatus.ALL, (status, CheckStatus.ALL)
        self.name = name
        self.status = status
        self.measured = measured
        self.tolerance = tolerance
        self.detail = detail

    def to_yaml(self):
        data = OrderedDict()
        data['name'] = self.name
        data['status'] = self.status
        data['measured'] = float(self.measured)
        data['tolerance'] = None if self.tolerance is None else float(self.tolerance)
        data['detail'] = self.detail
        return data

    def as_line(self):
        tol = '-' if self.tolerance is None else '%.3g' % self.tolerance
        return '%s %s measured=%.6g tolerance=%s (%s)' % (self.status, self.name, self.measured, tol, self.detail)


class VerificationReport(object):

    def __init__(self, checks):
        self.checks = list(checks)

    def get_status(self):
        if all(c.status == CheckStatus.PASS for c in self.checks):
            return CheckStatus.PASS
        return CheckStatus.FAIL

    def failed(self):
        return [c for c in self.checks if c.status == CheckStatus.FAIL]

    def to_yaml(self):
        data = OrderedDict()
        data['status'] = self.get_status()
        data['checks'] = [c.to_yaml() for c in self.checks]
        return data

    def as_text(self):
        lines = [c.as_line() for c in self.checks]
        lines.append('%s: %d of %d checks passed' % (self.get_status(), len(self.checks) - len(self.failed()),
                                                    len(self.checks)))
        return '\n'.join(lines) + '\n'


class VerificationCheck(metaclass=ABCMeta):
    name = None
    # None: the check compares against a bound, not a tolerance
    default_tolerance = None

    def tolerance(self, override):
        if self.default_tolerance is None or override is None:
            return self.default_tolerance
        return override

    @abstractmethod
    def measure(self):
        """ Returns (measured, detail). """

    def passes(self, measured, tolerance):
        return measured <= tolerance

    def run(self, tolerance_override=None):
        tol = self.tolerance(tolerance_override)
        measured, detail = self.measure()
        ok = self.passes(measured, tol)
        status = CheckStatus.PASS if ok else CheckStatus.FAIL
        sdlogger.debug('%s: %s measured %.6g' % (self.name, status, measured))
        return CheckResult(self.name, status, measured, tol, detail)


# Radius used by the adjoint checks; any r <= 1/sqrt(2) works
CHECK_RADIUS = 0.4


def _u_max():
    return TurnRadius(CHECK_RADIUS).u_max


class NormConservation(VerificationCheck):
    name = 'adjoint-norm-conservation'
    default_tolerance = 1e-10

    def measure(self):
        u_max = _u_max()
        prng = np.random.RandomState(0)
        pieces = []
        total = 0.0
        while total < 10.0:
            ds = min(prng.uniform(0.1, 1.5), 10.0 - total)
            pieces.append((prng.choice([-u_max, 0.0, u_max]), ds))
            total += ds
        psi0 = AdjointState(0.3, -0.7, 0.5)
        flow = adjoint_flow(psi0, pieces, step=0.01, u_max=u_max)
        drift = max(abs(psi.norm2() - psi0.norm2()) for _, psi in flow)
        return drift, '%d pieces over arc length %.3g' % (len(pieces), total)


def _switching_extremal(psi0, length=10.0):
    return simulate_extremal(psi0, _u_max(), length, step=0.01)


class HamiltonianConstancy(VerificationCheck):
    name = 'hamiltonian-zero'
    default_tolerance = 1e-9

    def measure(self):
        # H(0) = 1 + C + u A = 0 at an inflection point with C = -1
        e = 1.0
        traj = _switching_extremal(AdjointState(0.0, 0.35, -1.0))
        worst = max(abs(hamiltonian(psi, u, e)) for (_, psi), u in zip(traj.samples, traj.controls))
        return worst, 'e = 1, %d switches' % len(traj.switches)


def _abnormal_start(lam=1.0):
    w = np.sqrt(1.0 + _u_max() ** 2)
    return AdjointState(0.0, -lam * w, 0.0)


class InflectionSpacing(VerificationCheck):
    name = 'inflection-spacing'
    default_tolerance = 1e-10

    def measure(self):
        w = np.sqrt(1.0 + _u_max() ** 2)
        traj = _switching_extremal(_abnormal_start())
        spacing = np.diff([0.0] + traj.switches)
        worst = float(np.max(np.abs(spacing - np.pi / w)))
        return worst, '%d switches, expected spacing %.12g' % (len(traj.switches), np.pi / w)


class PhaseInvariant(VerificationCheck):
    name = 'phase-invariant'
    default_tolerance = 1e-10

    def measure(self):
        u_max = _u_max()
        lam = 1.0
        model = AbnormalSolution(lam, np.pi)
        traj = _switching_extremal(_abnormal_start(lam))
        worst = 0.0
        for s, psi in traj.samples:
            # dA/ds = B
            worst = max(worst, abs(phase_invariant(psi.A, psi.B, u_max) - lam ** 2),
                        abs(psi.A - model.A(s, u_max)))
        return worst, 'e = 0, lambda = %g, %d samples' % (lam, len(traj.samples))


class DeltaLPositivity(VerificationCheck):
    name = 'delta-l-positive'

    def __init__(self, samples):
        self.samples = samples

    def measure(self):
        rs = np.linspace(0.001, R_MAX_ANALYSIS, self.samples)
        values = [delta_l(r) for r in rs]
        i = int(np.argmin(values))
        return values[i], 'min over %d samples, at r = %.6g' % (len(rs), rs[i])

    def passes(self, measured, tolerance):
        return measured > 0


def _derivative_samples(n):
    rs = np.linspace(0.0, R_MAX_ANALYSIS, n + 2)[1:-1]
    return [r for r in rs if abs(r - 0.5) > 1e-9]


class DeltaLPrimeBound(VerificationCheck):
    name = 'delta-l-prime-bound'

    def __init__(self, samples):
        self.samples = samples

    def measure(self):
        rs = _derivative_samples(self.samples)
        values = [delta_l_prime(r) for r in rs]
        i = int(np.argmin(values))
        return values[i], 'min over %d samples, bound %.9g' % (len(rs), DELTA_L_PRIME_BOUND)

    def passes(self, measured, tolerance):
        return measured > DELTA_L_PRIME_BOUND


class DeltaLFiniteDifference(VerificationCheck):
    name = 'delta-l-finite-difference'
    default_tolerance = 1e-6
    h = 1e-5

    def measure(self):
        rs = list(np.linspace(0.05, 0.45, 9)) + list(np.linspace(0.55, 0.68, 5))
        worst = 0.0
        for r in rs:
            fd = (delta_l(r + self.h) - delta_l(r - self.h)) / (2 * self.h)
            worst = max(worst, abs(fd - delta_l_prime(r)))
        return worst, 'central differences at h = %g on %d radii' % (self.h, len(rs))


class ReplacementPath(VerificationCheck):
    name = 'replacement-path'
    default_tolerance = 1e-9

    def measure(self):
        rs = np.linspace(0.0, R_MAX_ANALYSIS, 101)[1:]
        worst = 0.0
        for r in rs:
            err = replacement_path_error(r)
            phi1, phi2 = lg_replacement_angles(r)
            if not r * phi1 + phi2 < 2 * r * np.pi:
                return np.inf, 'LG replacement not shorter at r = %.6g' % r
            worst = max(worst, err)
        return worst, 'endpoint mismatch on %d radii' % len(rs)


class ReplacementAngles(VerificationCheck):
    name = 'replacement-angles'
    default_tolerance = 1e-10

    def measure(self):
        expected = [(0.5, (np.pi / 2, np.pi / 2)),
                    (R_MAX_ANALYSIS, (0.0, np.pi))]
        worst = 0.0
        for r, angles in expected:
            worst = max(worst, float(np.max(np.abs(np.array(lg_replacement_angles(r)) - angles))))
        for r in np.linspace(0.0, R_MAX_ANALYSIS, 51):
            worst = max(worst, lg_replacement_residual(r))
        return worst, 'closed-form angles and component equations'


class GCNonoptimality(VerificationCheck):
    name = 'gc-nonoptimality'

    def measure(self):
        rs = np.linspace(0.05, R_MAX_ANALYSIS, 20)
        values = [gc_nonoptimality_residual(TurnRadius(r).u_max) for r in rs]
        return min(values), 'axial offset, min over %d radii' % len(rs)

    def passes(self, measured, tolerance):
        return measured > 0


class CCCEqualAngles(VerificationCheck):
    name = 'ccc-equal-angles'
    default_tolerance = 1e-9

    def measure(self):
        worst = 0.0
        for r in [0.2, 0.4, 0.5, 0.65]:
            for B0 in [-2.0, -0.3, 0.1, 1.5]:
                res = ccc_inflection_angles(B0, r)
                if not res.phi_middle > np.pi:
                    return np.inf, 'middle turn %.6g <= pi at r = %g, B0 = %g' % (res.phi_middle, r, B0)
                if np.sign(res.B_middle) == np.sign(B0):
                    return np.inf, 'B keeps its sign at r = %g, B0 = %g' % (r, B0)
                worst = max(worst, abs(res.phi_final - res.phi_middle))
        return worst, 'middle and final turn angles agree'


class ClosedFormVsIntegrator(VerificationCheck):
    name = 'closed-form-vs-integrator'
    default_tolerance = 1e-8
    step = 1e-4

    def measure(self):
        prng = np.random.RandomState(1)
        worst = 0.0
        n = 0
        for seg_type in SegmentType.ALL:
            for _ in range(2):
                r = prng.uniform(0.1, R_MAX_ANALYSIS)
                phi = prng.uniform(0.0, 2 * np.pi)
                u_g = geodesic_curvature(seg_type, r)
                s = phi / np.sqrt(1.0 + u_g ** 2)
                R = integrate_frame(np.eye(3), u_g, s, self.step)
                worst = max(worst, float(np.max(np.abs(R.matrix - segment_rotation(seg_type, r, phi)))))
                n += 1
        return worst, '%d segments, RK4 step %g' % (n, self.step)


def get_checks(dl_samples=1000):
    return [NormConservation(),
            HamiltonianConstancy(),
            InflectionSpacing(),
            PhaseInvariant(),
            DeltaLPositivity(dl_samples),
            DeltaLPrimeBound(dl_samples),
            DeltaLFiniteDifference(),
            ReplacementPath(),
            ReplacementAngles(),
            GCNonoptimality(),
            CCCEqualAngles(),
            ClosedFormVsIntegrator()]


def run_verification(tolerance=None, dl_samples=1000):
    """ Runs every check; `tolerance` replaces the per-check tolerances. """
    if dl_samples < 1:
        msg = 'dl_samples must be >= 1, got %r' % dl_samples
        raise DomainError(msg)
    results = [check.run(tolerance) for check in get_checks(dl_samples)]
    return VerificationReport(results)
