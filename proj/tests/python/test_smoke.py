# Copyright 2026 The qens Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import os

import numpy as np
import pytest

import qens

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


def outer_sum(ensemble):
    return sum(m["weight"] * np.outer(m["state"], m["state"].conj()) for m in ensemble)


def test_majorization_basics():
    assert qens.is_majorized_by([1 / 3] * 3, [0.5, 0.25, 0.25])
    assert not qens.is_majorized_by([0.6, 0.4], [0.5, 0.5])
    check = qens.check_majorization([0.75, 0.25], [0.5, 0.5])
    assert not check["holds"]
    assert check["reason"] == "majorization violated at k=1: 0.75 > 0.5"


def test_chain_and_witness():
    chain = qens.t_transform_chain([0.4, 0.35, 0.25], [0.6, 0.3, 0.1])
    assert [(i, k) for i, k, _ in chain["transforms"]] == [(0, 1), (1, 2)]
    assert chain["transforms"][1][2] == pytest.approx(0.625)
    w, d = qens.horn_orthogonal([0.4, 0.35, 0.25], [0.6, 0.3, 0.1])
    assert np.allclose(w @ w.T, np.eye(3), atol=1e-10)
    assert np.allclose(d @ [0.6, 0.3, 0.1], [0.4, 0.35, 0.25], atol=1e-12)


def test_majorization_error_carries_fields():
    with pytest.raises(qens.MajorizationError) as info:
        qens.synthesize_ensemble(np.eye(2) / 2, [0.75, 0.25])
    assert info.value.k == 1
    assert isinstance(info.value, qens.DomainError)
    assert isinstance(info.value, RuntimeError)


def test_validation_error_is_value_error():
    with pytest.raises(ValueError):
        qens.validate_density(np.array([[0.6, 0], [0, 0.5]]))
    with pytest.raises(qens.ValidationError):
        qens.is_majorized_by([0.6, 0.6], [1.0])


def test_synthesize_matches_numpy():
    rho = qens.random_density(5, 3, 17)
    assert np.allclose(rho, rho.conj().T)
    lam = np.linalg.eigvalsh(rho)
    assert lam.min() > -1e-12
    ens = qens.synthesize_ensemble(rho, [0.25] * 4)
    assert len(ens) == 4
    assert np.linalg.norm(outer_sum(ens) - rho) < 1e-10
    for m in ens:
        assert np.linalg.norm(m["state"]) == pytest.approx(1.0)
    assert qens.verify_ensemble(ens, rho)["passed"]
    report = qens.entropy_report(ens)
    assert report["shannon"] == pytest.approx(math.log(4))
    assert report["shannon"] >= report["von_neumann"]


def test_uniform_ensemble_rank_bound():
    rho = qens.random_density(4, 3, 2)
    assert len(qens.uniform_ensemble(rho, 3)) == 3
    with pytest.raises(qens.MajorizationError):
        qens.uniform_ensemble(rho, 2)


def test_schmidt_and_corollary4():
    psi = np.array([[math.sqrt(0.8), 0], [0, math.sqrt(0.2)]], dtype=complex)
    s = qens.schmidt(psi)
    assert s["coefficients"] == pytest.approx([0.8, 0.2])
    assert np.allclose(qens.reduced_density(psi, "A"), np.diag([0.8, 0.2]))
    c = qens.corollary4_decompose(psi, [0.5, 0.5])
    assert np.linalg.norm(c["reconstruction"] - psi) < 1e-9


def test_relate_purifications_swap():
    r = math.sqrt(0.5)
    phi = np.array([[r, 0], [0, r]], dtype=complex)
    psi = np.array([[0, r], [r, 0]], dtype=complex)
    u = qens.relate_purifications(phi, psi)
    assert np.allclose(u, [[0, 1], [1, 0]], atol=1e-12)


def test_protocol():
    rng = np.random.default_rng(3)
    target = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    target /= np.linalg.norm(target)
    branches = qens.run_protocol_exhaustive(target, 3)
    assert len(branches) == 9
    assert min(b["fidelity"] for b in branches) > 1 - 1e-9
    assert all(b["outcome_probability"] == pytest.approx(1 / 9) for b in branches)
    t = qens.run_protocol(target, 3, seed=42)
    assert t["bits_sent"] == 4
    assert qens.comm_cost(1024) == (20, 1023)


def test_weyl_twirl():
    a = np.array([[1.0, 2 - 1j], [2 + 1j, -0.5]])
    assert np.allclose(qens.weyl_twirl(a), 2 * np.trace(a) * np.eye(2))
    assert np.allclose(qens.weyl_op(2, 1, 1), [[0, -1], [1, 0]])


def test_run_job_matches_cli_contract():
    rc, report = qens.run_job(
        "ensemble-synth",
        [os.path.join(DATA, "half_identity.json"), os.path.join(DATA, "p_third.json")],
    )
    assert rc == 0
    doc = json.loads(report)
    assert len(doc["result"]["ensemble"]["members"]) == 3
    rc, _ = qens.run_job("majorize-check", [os.path.join(DATA, "bad_sum.json")])
    assert rc == 2
    a = qens.run_job("protocol-run", [os.path.join(DATA, "unbalanced_pair.json")], seed=42, d=2)
    b = qens.run_job("protocol-run", [os.path.join(DATA, "unbalanced_pair.json")], seed=42, d=2)
    assert a == b and a[0] == 0
