/**
 * Service payloads captured verbatim from a finished debugging session
 * over the four-concept cardiology fragment: eighteen answers given,
 * three repairs proposed, nothing executed yet.
 */

import { AnalysisView, HistoryEvent, QueueResponse, RepairView, SessionView } from "../src/api.js";

export const SESSION: SessionView = {
  "id": "f4ccb8a37220",
  "phase": "repairing",
  "pendingQueries": [],
  "answered": 18,
  "goalMissing": [
    "Endocarditis SubClassOf PathologicalPhenomenon",
    "GranulomaProcess SubClassOf NonNormalProcess"
  ],
  "goalWrong": [
    "PathologicalProcess SubClassOf GranulomaProcess"
  ],
  "repairs": [
    "r-13b914c906",
    "r-dfcd6c0db6",
    "r-d300bef3fe"
  ],
  "executedRepair": null,
  "notes": []
};

export const EMPTY_QUEUE: QueueResponse = {
  "phase": "repairing",
  "queries": []
};

export const REPAIRS: RepairView[] = [
  {
    "id": "r-13b914c906",
    "origin": "hitting-set",
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf PathologicalProcess"
    ],
    "delete": [
      "PathologicalProcess SubClassOf InflammationProcess"
    ],
    "verification": {
      "holds": true,
      "conditions": {
        "addedAxiomsTrue": true,
        "deletedAxiomsFalse": true,
        "resultConsistent": true,
        "missingEntailed": true,
        "wrongAvoided": true
      },
      "untrueAdds": [],
      "undeletable": [],
      "protectedRemoved": [],
      "missingNotEntailed": [],
      "wrongEntailed": [],
      "unmatchedDeletes": []
    }
  },
  {
    "id": "r-dfcd6c0db6",
    "origin": "hitting-set",
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf PathologicalProcess"
    ],
    "delete": [
      "InflammationProcess SubClassOf GranulomaProcess"
    ],
    "verification": {
      "holds": true,
      "conditions": {
        "addedAxiomsTrue": true,
        "deletedAxiomsFalse": true,
        "resultConsistent": true,
        "missingEntailed": true,
        "wrongAvoided": true
      },
      "untrueAdds": [],
      "undeletable": [],
      "protectedRemoved": [],
      "missingNotEntailed": [],
      "wrongEntailed": [],
      "unmatchedDeletes": []
    }
  },
  {
    "id": "r-d300bef3fe",
    "origin": "remove-all-false",
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf PathologicalProcess"
    ],
    "delete": [
      "InflammationProcess SubClassOf GranulomaProcess",
      "PathologicalProcess SubClassOf InflammationProcess"
    ],
    "verification": {
      "holds": true,
      "conditions": {
        "addedAxiomsTrue": true,
        "deletedAxiomsFalse": true,
        "resultConsistent": true,
        "missingEntailed": true,
        "wrongAvoided": true
      },
      "untrueAdds": [],
      "undeletable": [],
      "protectedRemoved": [],
      "missingNotEntailed": [],
      "wrongEntailed": [],
      "unmatchedDeletes": []
    }
  }
];

export const ANALYSIS: AnalysisView = {
  "candidates": [
    "r-13b914c906",
    "r-dfcd6c0db6",
    "r-d300bef3fe"
  ],
  "matrix": {
    "r-13b914c906": {
      "r-dfcd6c0db6": {
        "completeness": "first",
        "correctness": "incomparable",
        "subset": "incomparable"
      },
      "r-d300bef3fe": {
        "completeness": "first",
        "correctness": "second",
        "subset": "first"
      }
    },
    "r-dfcd6c0db6": {
      "r-13b914c906": {
        "completeness": "second",
        "correctness": "incomparable",
        "subset": "incomparable"
      },
      "r-d300bef3fe": {
        "completeness": "equal",
        "correctness": "second",
        "subset": "first"
      }
    },
    "r-d300bef3fe": {
      "r-13b914c906": {
        "completeness": "second",
        "correctness": "first",
        "subset": "second"
      },
      "r-dfcd6c0db6": {
        "completeness": "equal",
        "correctness": "first",
        "subset": "second"
      }
    }
  },
  "certificates": {
    "r-13b914c906": {
      "maximallyComplete": true,
      "missingTrue": [],
      "minimallyIncorrect": false,
      "falseEntailed": [
        "InflammationProcess SubClassOf GranulomaProcess"
      ]
    },
    "r-dfcd6c0db6": {
      "maximallyComplete": false,
      "missingTrue": [
        "Endocarditis SubClassOf exists hasAssociatedProcess. PathologicalProcess",
        "InflammationProcess SubClassOf PathologicalProcess",
        "exists hasAssociatedProcess. InflammationProcess SubClassOf PathologicalPhenomenon"
      ],
      "minimallyIncorrect": false,
      "falseEntailed": [
        "PathologicalProcess SubClassOf InflammationProcess"
      ]
    },
    "r-d300bef3fe": {
      "maximallyComplete": false,
      "missingTrue": [
        "Endocarditis SubClassOf exists hasAssociatedProcess. PathologicalProcess",
        "InflammationProcess SubClassOf PathologicalProcess",
        "exists hasAssociatedProcess. InflammationProcess SubClassOf PathologicalPhenomenon"
      ],
      "minimallyIncorrect": true,
      "falseEntailed": []
    }
  },
  "skyline": [
    "r-13b914c906",
    "r-dfcd6c0db6",
    "r-d300bef3fe"
  ],
  "optimal": {
    "MoreComplete": [
      "r-13b914c906"
    ],
    "LessIncorrect": [
      "r-d300bef3fe"
    ],
    "Subset": [
      "r-13b914c906",
      "r-dfcd6c0db6"
    ]
  }
};

export const HISTORY: HistoryEvent[] = [
  {
    "missing": [
      "Endocarditis SubClassOf PathologicalPhenomenon",
      "GranulomaProcess SubClassOf NonNormalProcess"
    ],
    "options": {},
    "seq": 0,
    "tbox": "concepts: CardioVascularDisease Carditis Endocarditis Fracture GranulomaProcess InflammationProcess NonNormalProcess PathologicalPhenomenon PathologicalProcess\nroles: hasAssociatedProcess\nax1: CardioVascularDisease SubClassOf PathologicalPhenomenon\nax2: Fracture SubClassOf PathologicalPhenomenon\nax3: exists hasAssociatedProcess. PathologicalProcess SubClassOf PathologicalPhenomenon\nax4: Endocarditis SubClassOf Carditis\nax5: Endocarditis SubClassOf exists hasAssociatedProcess. InflammationProcess\nax6: PathologicalProcess SubClassOf NonNormalProcess\nax7: PathologicalProcess SubClassOf InflammationProcess\nax8: InflammationProcess SubClassOf GranulomaProcess\n",
    "type": "tbox-loaded",
    "wrong": [
      "PathologicalProcess SubClassOf GranulomaProcess"
    ]
  },
  {
    "axiom": "Endocarditis SubClassOf PathologicalPhenomenon",
    "seq": 1,
    "type": "query-issued"
  },
  {
    "axiom": "GranulomaProcess SubClassOf NonNormalProcess",
    "seq": 2,
    "type": "query-issued"
  },
  {
    "axiom": "PathologicalProcess SubClassOf GranulomaProcess",
    "seq": 3,
    "type": "query-issued"
  },
  {
    "axiom": "Endocarditis SubClassOf PathologicalPhenomenon",
    "seq": 4,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "axiom": "GranulomaProcess SubClassOf NonNormalProcess",
    "seq": 5,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "axiom": "PathologicalProcess SubClassOf GranulomaProcess",
    "seq": 6,
    "type": "answer-received",
    "verdict": "false"
  },
  {
    "axiom": "PathologicalProcess SubClassOf InflammationProcess",
    "seq": 7,
    "type": "query-issued"
  },
  {
    "axiom": "InflammationProcess SubClassOf GranulomaProcess",
    "seq": 8,
    "type": "query-issued"
  },
  {
    "axiom": "PathologicalProcess SubClassOf InflammationProcess",
    "seq": 9,
    "type": "answer-received",
    "verdict": "false"
  },
  {
    "axiom": "InflammationProcess SubClassOf GranulomaProcess",
    "seq": 10,
    "type": "answer-received",
    "verdict": "false"
  },
  {
    "axiom": "Carditis SubClassOf CardioVascularDisease",
    "seq": 11,
    "type": "query-issued"
  },
  {
    "axiom": "Carditis SubClassOf Fracture",
    "seq": 12,
    "type": "query-issued"
  },
  {
    "axiom": "Carditis SubClassOf exists hasAssociatedProcess. PathologicalProcess",
    "seq": 13,
    "type": "query-issued"
  },
  {
    "axiom": "exists hasAssociatedProcess. InflammationProcess SubClassOf CardioVascularDisease",
    "seq": 14,
    "type": "query-issued"
  },
  {
    "axiom": "exists hasAssociatedProcess. InflammationProcess SubClassOf Fracture",
    "seq": 15,
    "type": "query-issued"
  },
  {
    "axiom": "exists hasAssociatedProcess. InflammationProcess SubClassOf exists hasAssociatedProcess. PathologicalProcess",
    "seq": 16,
    "type": "query-issued"
  },
  {
    "axiom": "Carditis SubClassOf PathologicalPhenomenon",
    "seq": 17,
    "type": "query-issued"
  },
  {
    "axiom": "Endocarditis SubClassOf CardioVascularDisease",
    "seq": 18,
    "type": "query-issued"
  },
  {
    "axiom": "Endocarditis SubClassOf Fracture",
    "seq": 19,
    "type": "query-issued"
  },
  {
    "axiom": "Endocarditis SubClassOf exists hasAssociatedProcess. PathologicalProcess",
    "seq": 20,
    "type": "query-issued"
  },
  {
    "axiom": "GranulomaProcess SubClassOf PathologicalProcess",
    "seq": 21,
    "type": "query-issued"
  },
  {
    "axiom": "InflammationProcess SubClassOf PathologicalProcess",
    "seq": 22,
    "type": "query-issued"
  },
  {
    "axiom": "exists hasAssociatedProcess. InflammationProcess SubClassOf PathologicalPhenomenon",
    "seq": 23,
    "type": "query-issued"
  },
  {
    "add": [
      "Endocarditis SubClassOf PathologicalPhenomenon",
      "GranulomaProcess SubClassOf NonNormalProcess"
    ],
    "delete": [
      "PathologicalProcess SubClassOf InflammationProcess"
    ],
    "origin": "hitting-set",
    "repairId": "r-be06b099f5",
    "seq": 24,
    "type": "repair-proposed"
  },
  {
    "add": [
      "Endocarditis SubClassOf PathologicalPhenomenon",
      "GranulomaProcess SubClassOf NonNormalProcess"
    ],
    "delete": [
      "InflammationProcess SubClassOf GranulomaProcess"
    ],
    "origin": "hitting-set",
    "repairId": "r-8563d16acc",
    "seq": 25,
    "type": "repair-proposed"
  },
  {
    "add": [
      "Endocarditis SubClassOf PathologicalPhenomenon",
      "GranulomaProcess SubClassOf NonNormalProcess"
    ],
    "delete": [
      "InflammationProcess SubClassOf GranulomaProcess",
      "PathologicalProcess SubClassOf InflammationProcess"
    ],
    "origin": "remove-all-false",
    "repairId": "r-a46ac9e733",
    "seq": 26,
    "type": "repair-proposed"
  },
  {
    "axiom": "Carditis SubClassOf CardioVascularDisease",
    "seq": 27,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf NonNormalProcess"
    ],
    "delete": [
      "PathologicalProcess SubClassOf InflammationProcess"
    ],
    "origin": "hitting-set",
    "repairId": "r-5d7ca618aa",
    "seq": 28,
    "type": "repair-proposed"
  },
  {
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf NonNormalProcess"
    ],
    "delete": [
      "InflammationProcess SubClassOf GranulomaProcess"
    ],
    "origin": "hitting-set",
    "repairId": "r-c0dc2ba048",
    "seq": 29,
    "type": "repair-proposed"
  },
  {
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf NonNormalProcess"
    ],
    "delete": [
      "InflammationProcess SubClassOf GranulomaProcess",
      "PathologicalProcess SubClassOf InflammationProcess"
    ],
    "origin": "remove-all-false",
    "repairId": "r-467f753846",
    "seq": 30,
    "type": "repair-proposed"
  },
  {
    "axiom": "Carditis SubClassOf Fracture",
    "seq": 31,
    "type": "answer-received",
    "verdict": "false"
  },
  {
    "axiom": "Carditis SubClassOf exists hasAssociatedProcess. PathologicalProcess",
    "seq": 32,
    "type": "answer-received",
    "verdict": "false"
  },
  {
    "axiom": "exists hasAssociatedProcess. InflammationProcess SubClassOf CardioVascularDisease",
    "seq": 33,
    "type": "answer-received",
    "verdict": "false"
  },
  {
    "axiom": "exists hasAssociatedProcess. InflammationProcess SubClassOf Fracture",
    "seq": 34,
    "type": "answer-received",
    "verdict": "false"
  },
  {
    "axiom": "exists hasAssociatedProcess. InflammationProcess SubClassOf exists hasAssociatedProcess. PathologicalProcess",
    "seq": 35,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "axiom": "Carditis SubClassOf PathologicalPhenomenon",
    "seq": 36,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "axiom": "Endocarditis SubClassOf CardioVascularDisease",
    "seq": 37,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "axiom": "Endocarditis SubClassOf Fracture",
    "seq": 38,
    "type": "answer-received",
    "verdict": "false"
  },
  {
    "axiom": "Endocarditis SubClassOf exists hasAssociatedProcess. PathologicalProcess",
    "seq": 39,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "axiom": "GranulomaProcess SubClassOf PathologicalProcess",
    "seq": 40,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf PathologicalProcess"
    ],
    "delete": [
      "PathologicalProcess SubClassOf InflammationProcess"
    ],
    "origin": "hitting-set",
    "repairId": "r-13b914c906",
    "seq": 41,
    "type": "repair-proposed"
  },
  {
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf PathologicalProcess"
    ],
    "delete": [
      "InflammationProcess SubClassOf GranulomaProcess"
    ],
    "origin": "hitting-set",
    "repairId": "r-dfcd6c0db6",
    "seq": 42,
    "type": "repair-proposed"
  },
  {
    "add": [
      "Carditis SubClassOf CardioVascularDisease",
      "GranulomaProcess SubClassOf PathologicalProcess"
    ],
    "delete": [
      "InflammationProcess SubClassOf GranulomaProcess",
      "PathologicalProcess SubClassOf InflammationProcess"
    ],
    "origin": "remove-all-false",
    "repairId": "r-d300bef3fe",
    "seq": 43,
    "type": "repair-proposed"
  },
  {
    "axiom": "InflammationProcess SubClassOf PathologicalProcess",
    "seq": 44,
    "type": "answer-received",
    "verdict": "true"
  },
  {
    "axiom": "exists hasAssociatedProcess. InflammationProcess SubClassOf PathologicalPhenomenon",
    "seq": 45,
    "type": "answer-received",
    "verdict": "true"
  }
];
export const RESULT_TEXT: string = "concepts: CardioVascularDisease Carditis Endocarditis Fracture GranulomaProcess InflammationProcess NonNormalProcess PathologicalPhenomenon PathologicalProcess\nroles: hasAssociatedProcess\nax1: CardioVascularDisease SubClassOf PathologicalPhenomenon\nax2: Fracture SubClassOf PathologicalPhenomenon\nax3: exists hasAssociatedProcess. PathologicalProcess SubClassOf PathologicalPhenomenon\nax4: Endocarditis SubClassOf Carditis\nax5: Endocarditis SubClassOf exists hasAssociatedProcess. InflammationProcess\nax6: PathologicalProcess SubClassOf NonNormalProcess\nax8: InflammationProcess SubClassOf GranulomaProcess\nax9: Carditis SubClassOf CardioVascularDisease\nax10: GranulomaProcess SubClassOf PathologicalProcess\n";
