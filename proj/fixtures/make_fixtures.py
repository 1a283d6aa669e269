#!/usr/bin/env python3
"""Writes the GridStix fixtures in canonical form (sorted keys, 2-space
indent, shortest round-trip numbers), matching what `save_project` emits."""
import json
from pathlib import Path

HERE = Path(__file__).resolve().parent

QAS = [("Performance", 20), ("Reliability", 30), ("Availability", 20),
       ("Security", 10), ("Scalability", 5), ("EnergyEfficiency", 15)]

# (id, strategies, contribution row in QA order, raw cost)
TABLE = [
    ("DAD1", ["Wifi"],       [0.6, 1.0, 0.7, 0.3, 0.7, -0.2], 30),
    ("DAD2", ["BT"],         [0.1, 0.4, 0.9, 0.8, -0.4, 0.8], 20),
    ("DAD3", ["FH"],         [0.5, 0.8, 0.8, 0.0, 0.0, -0.4], 15),
    ("DAD4", ["SH"],         [0.2, -0.1, 0.5, 0.0, 0.0, 0.7], 10),
    ("DAD5", ["Wifi", "FH"], [1.0, 1.0, 0.9, -0.1, 0.7, -0.6], 45),
    ("DAD6", ["Wifi", "SP"], [0.7, 0.5, 0.5, -0.1, 0.7, 0.2], 40),
    ("DAD7", ["BT", "FH"],   [0.5, 0.2, 0.6, 0.8, -0.4, 0.7], 35),
    ("DAD8", ["BT", "SP"],   [0.2, 0.1, -0.2, 0.8, -0.4, 1.0], 30),
]


def num(x):
    return int(x) if float(x).is_integer() else x


project = {
    "schema_version": 1,
    "name": "GridStix flood monitoring",
    "scale_factor": 25,
    "budget": 3000,
    "quality_attributes": [{"name": n, "score": s} for n, s in QAS],
    "scenarios": [
        {"id": "Sc1", "qa_concern": "Performance",
         "description": "Sensor node to gateway message latency",
         "response_measure": "<= 30 ms",
         "candidate_dads": ["DAD1", "DAD3", "DAD5", "DAD7"]},
        {"id": "Sc2", "qa_concern": "Availability",
         "description": "Gateway hardware failure",
         "response_measure": "detected and recovered in < 1 min",
         "candidate_dads": []},
        {"id": "Sc3", "qa_concern": "Reliability",
         "description": "Flood alert delivery",
         "response_measure": "alert sent in < 2 s",
         "candidate_dads": []},
        {"id": "Sc4", "qa_concern": "Reliability",
         "description": "Routes from a sensor node to the gateway",
         "response_measure": "average route count > 13",
         "candidate_dads": []},
        {"id": "Sc5", "qa_concern": "Scalability",
         "description": "Forwarding from a full node to a neighbour",
         "response_measure": "<= 100 ms",
         "candidate_dads": []},
        {"id": "Sc6", "qa_concern": "EnergyEfficiency",
         "description": "Power drawn forwarding 1 KB node to gateway",
         "response_measure": "<= 1400 mW average",
         "candidate_dads": ["DAD2", "DAD4", "DAD7", "DAD8"]},
        {"id": "Sc7", "qa_concern": "Security",
         "description": "Gateway protection against data manipulation",
         "response_measure": "99.99 %",
         "candidate_dads": []},
    ],
    "strategies": [
        {"id": "Wifi", "name": "Wi-Fi", "raw_cost": 30},
        {"id": "BT", "name": "Bluetooth", "raw_cost": 20},
        {"id": "GPRS", "name": "GPRS"},
        {"id": "FH", "name": "Fewest-hop routing", "raw_cost": 15},
        {"id": "SP", "name": "Shortest-path routing"},
        {"id": "SH", "name": "Single-hop routing", "raw_cost": 10},
    ],
    "dads": [
        {"id": i, "strategies": s,
         "contrib": {q: num(v) for (q, _), v in zip(QAS, row)},
         "raw_cost": c}
        for i, s, row, c in TABLE
    ],
    "portfolios": [
        {"id": "P1", "dad_ids": ["DAD1"], "budget": 3000, "base_values": {"DAD1": 1400}},
        {"id": "P5", "dad_ids": ["DAD5"], "budget": 3000, "base_values": {"DAD5": 1200}},
        {"id": "P7", "dad_ids": ["DAD7"], "budget": 3000, "base_values": {"DAD7": 1100}},
        {"id": "P57", "dad_ids": ["DAD5", "DAD7"], "budget": 2500,
         "base_values": {"DAD5": 800, "DAD7": 650}},
        {"id": "P157", "dad_ids": ["DAD1", "DAD5", "DAD7"], "budget": 3000,
         "base_values": {"DAD1": 300, "DAD5": 300, "DAD7": 300}},
    ],
    "lattice_defaults": {"vs": 1750, "s0_dad": 0, "u": 1.2, "d": 0.9, "r": 0.005,
                         "horizons": 3, "convention": "paper-1minus", "style": "european"},
    "whatif_configs": [
        {"id": "W5", "portfolio_id": "P5", "lo": 300, "hi": 2200, "step": 100},
        {"id": "W57", "portfolio_id": "P57", "lo": 300, "hi": 2200, "step": 100},
    ],
    "rating_matrices": [
        {"id": "Sc1-panel", "items": ["DAD1", "DAD3", "DAD5", "DAD7"],
         "raters": ["architect", "operator", "hydrologist"],
         "ranks": [[2, 4, 1, 3], [2, 3, 1, 4], [1, 4, 2, 3]]},
    ],
}

(HERE / "gridstix.dcbam.json").write_text(
    json.dumps(project, indent=2, sort_keys=True, ensure_ascii=False) + "\n")

lines = ["dad_id," + ",".join(q for q, _ in QAS) + ",cost"]
for i, _, row, c in TABLE:
    lines.append(",".join([i] + [repr(v) for v in row] + [str(c)]))
(HERE / "table4_contrib.csv").write_text("\n".join(lines) + "\n")

(HERE / "sc1_ratings.csv").write_text(
    "rater,DAD1,DAD3,DAD5,DAD7\n"
    "architect,2,4,1,3\n"
    "operator,2,3,1,4\n"
    "hydrologist,1,4,2,3\n")
