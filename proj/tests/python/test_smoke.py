import math

import numpy as np
import pytest

import fconv


def pair(cutoff=5):
    return fconv.ModeRegistry([fconv.Mode("p", 2.0, cutoff), fconv.Mode("i", 1.0, cutoff)])


def test_registry_and_states():
    reg = pair(3)
    assert reg.dimension == 16
    assert "p" in reg and "x" not in reg
    state = fconv.make_fock(reg, [1, 2])
    assert state.amplitudes.shape == (16,)
    assert state.amplitude([1, 2]) == 1
    with pytest.raises(fconv.OccupationExceedsCutoff):
        fconv.make_fock(reg, [4, 0])
    with pytest.raises(fconv.Error):
        fconv.make_fock(reg, [4, 0])


def test_unit_conversion():
    reg = pair()
    circuit = fconv.compile_circuit(fconv.Circuit(reg, [fconv.Converter("p", "i", math.pi / 2)]))
    out = circuit.run(fconv.make_fock(reg, [1, 0]))
    assert abs(out.amplitude([0, 1]) + 1) < 1e-12
    assert fconv.fidelity(out, fconv.make_fock(reg, [0, 1])) == pytest.approx(1.0, abs=1e-12)


def test_dense_unitary_is_unitary():
    reg = pair(8)
    u = fconv.amplifier_unitary(reg, fconv.Amplifier("p", "i", 0.3, 0.2))
    assert np.allclose(u.conj().T @ u, np.eye(reg.dimension), atol=1e-10)


def test_gaussian_agrees_with_fock():
    reg = pair(25)
    devices = [fconv.Converter("p", "i", 0.7, 0.3), fconv.Attenuator("i", 0.6)]
    circuit = fconv.Circuit(reg, devices)
    alpha = 0.8 - 0.5j
    rho = fconv.compile_circuit(circuit, fconv.Backend.fock).run(
        fconv.to_density(fconv.make_coherent(reg, "p", alpha)))
    g = fconv.compile_circuit(circuit, fconv.Backend.gaussian).run(fconv.gaussian_coherent(reg, "p", alpha))
    m = fconv.moments_of(rho)
    assert np.allclose(m.means, g.means, atol=1e-7)
    assert np.allclose(m.covariance, g.covariance, atol=1e-7)


def test_noise_scan_and_csv(tmp_path):
    scan = fconv.run_noise_comparison([0.0, 1.0])
    assert scan.column_labels == ["converter_variance", "amplifier_variance", "amplifier_spontaneous_photons"]
    assert scan.column("converter_variance") == pytest.approx([0.25, 0.25], abs=1e-10)
    assert scan.column("amplifier_spontaneous_photons")[1] == pytest.approx(math.sinh(1) ** 2, abs=1e-8)
    path = tmp_path / "noise.csv"
    fconv.write_csv(scan, str(path))
    assert path.read_text() == scan.to_csv()
    assert path.read_text().startswith("# backend=fock\n")


def test_wdm_and_errors():
    spec = fconv.WdmSpec(3.0, [fconv.WdmChannel(1.0, math.pi / 4), fconv.WdmChannel(1.5, math.pi / 2)])
    result = fconv.run_wdm(spec)
    assert [abs(c) ** 2 for c in result.amplitudes] == pytest.approx([0.0, 0.5, 0.5], abs=1e-12)
    with pytest.raises(fconv.EnergyConservationViolation):
        fconv.run_wdm(fconv.WdmSpec(1.0, [fconv.WdmChannel(2.0, 0.1)]))
    pump = fconv.make_fock(fconv.ModeRegistry([fconv.Mode("pump", 2.0, 1)]), [1])
    with pytest.raises(fconv.NonGaussianDevice):
        fconv.run_depletion_convergence([2.0], math.pi / 2, pump, fconv.RunOptions(fconv.Backend.gaussian))


def test_depletion_runner():
    pump = fconv.make_fock(fconv.ModeRegistry([fconv.Mode("pump", 2.0, 1)]), [1])
    scan = fconv.run_depletion_convergence([2.0, 3.0], math.pi / 2, pump)
    f = scan.column("fidelity")
    assert f[0] < f[1]
    assert f[0] == pytest.approx(0.86872983424861627, abs=1e-9)
