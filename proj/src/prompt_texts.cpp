// Built-in prompt template texts. Placeholders use {{name}} markers; all
// other braces are literal payload.

#include "prompt_texts.hpp"

namespace autosg::prompt_texts {

const char* const kTask =
    R"TPL(You are a highly skilled computer scientist in the field of expensive black-box optimization, Bayesian optimization, surrogate-assisted evolutionary computation, and modern metaheuristic algorithms. Your task is to design novel optimization algorithms to solve expensive black-box optimization problems

The algorithm is evaluated on the {{desc}}. Your task is to write the optimization algorithm in Python code. The code should contain an `__init__(self, budget, dim)` function and the function `__call__(self, func)`, which should *minimize* the expensive black-box function `func` using `self.budget` function evaluations.
The func() can only be called as many times as the budget allows, not more. Each of the optimization functions has a search space of {{search_space}} (bounds are set in self.bounds). **The algorithm must be specifically designed and optimized to solve {{desc}} with a strict budget of {{budget}} function evaluations.** The algorithm MUST use a surrogate model to approximate the expensive function and guide the search, thereby reducing the number of real function evaluations.
As an expert of numpy, scipy, scikit-learn, torch, gpytorch, you are allowed to use these libraries. Do not use any other libraries unless they cannot be replaced by the above libraries. Do not remove the comments from the code.
Name the class based on the characteristics of the algorithm.

Design an excellent optimization algorithm with strong performance to solve this task. While novel designs are welcome, well-established and widely verified algorithms are also fully acceptable. The algorithm can use any suitable approach including but not limited to:
- Evolutionary algorithms
- Bayesian optimization
- Surrogate-assisted methods
- Model-based optimization
- Metaheuristic algorithms
- Hybrid approaches

Key design considerations:
- How to efficiently use the limited {{budget}} budget
- Balancing exploration and exploitation in search spaces
- Handling {{dim}}-D dimensionality)TPL";

const char* const kMetaQuery =
    R"TPL(Recommend the most relevant state-of-the-art literature for this optimization task and construct its executable solver code)TPL";

const char* const kRewrite =
    R"TPL(You are a senior researcher specializing in academic literature retrieval. You are proficient in information retrieval, keyword extraction, and query formulation for academic search engines such as OpenAlex, arXiv, Google Scholar, IEEE Xplore, Scopus, and Web of Science. Your goal is to help the user design comprehensive and precise search queries that maximize recall of relevant state-of-the-art papers while minimizing irrelevant results.

I am conducting an academic literature search. Below is the problem description / prompt file that defines what I need to solve. Please read it carefully and help me summarize the best keywords and search queries.

Problem Description:
{{task_prompt}}

Your Task:
Based on the problem description above, generate exactly 8 search query strings that can be directly used as queries for OpenAlex and arXiv academic search APIs. The 8 queries MUST follow this structure:

- Query 1: Problem name query. Use the specific problem/application name from the description.
- Queries 2-4: Broad queries (high recall). Use short, general keyword combinations (3-5 words) that match the core research area. These ensure important papers are not missed.
- Queries 5-8: Precise queries (high precision). Use more specific keyword combinations (5-8 words) that narrow down to the exact problem setting.

Requirements:
- Queries should be concise keyword combinations (not full sentences).
- Use English academic terminology.
- ONLY extract keywords that describe the problem setting and research direction (e.g., problem type, scale, budget constraint, optimization category).
- Do NOT include specific algorithm names, specific surrogate model types (e.g., RBF, Gaussian process), specific techniques (e.g., random embedding, Latin hypercube), or any concrete solution methods - those are implementation details, not search keywords for finding relevant literature.

Output ONLY the following JSON block, nothing else:
{"search_queries": ["problem_name", "broad1", "broad2", "broad3", "precise1", "precise2", "precise3", "precise4"]})TPL";

const char* const kRerank =
    R"TPL(You are a highly skilled computer scientist in the field of expensive black-box optimization, Bayesian optimization, surrogate-assisted evolutionary computation, and modern metaheuristic algorithms. You stay current with the latest publications from top-tier venues. Your task is to identify the most effective state-of-the-art optimization algorithms for the given setting, prioritizing recent advances and empirical performance over traditional methods.

I need you to analyze recent literature and identify the SINGLE BEST algorithm for the following setting:
**Problem Setting:**
- Dimensionality: {{dim}}
- Function Evaluation Budget:  {{budget}}
- Problem Type: {{desc}}
- Search space / bounds: {{search_space}}

Below is a curated collection of recent academic papers retrieved from OpenAlex and arXiv. Please read them carefully.

{{candidate_metadata}}

**Your Task:**
**IMPORTANT: Do NOT recommend survey, review, or benchmarking/comparison papers - you must recommend the ORIGINAL paper that proposes the algorithm, with sufficient algorithmic detail (pseudocode, equations) for implementation.**

**Important: Prioritize papers published in top-tier venues**, including but not limited to:
- IEEE Transactions (e.g., IEEE TEVC, IEEE TCYB, IEEE TNNLS, IEEE TAI, IEEE TSMC)
- ACM conferences and journals
- Top AI/ML conferences (NeurIPS, ICML, ICLR, AAAI, IJCAI, GECCO, CEC, PPSN)

Papers from these venues should be given significantly higher weight than workshop papers, arXiv-only preprints, or low-tier venues.

Based on ALL the above sources and your own expertise, please provide:

1. **Top-1 Candidate Algorithm**: Name the single most promising algorithm for the **{{dim}} / {{budget}}** setting as described above. Cite the specific paper and its publication venue, and explain its key mechanism.

2. **Comparative Analysis**: Create a comparison table with columns: Algorithm Name, Paper Reference, Venue, Key Mechanism, Strengths for **{{dim}} / {{budget}}**, Weaknesses/Limitations, Estimated Suitability (1-10).

3. **Final Recommendation - Top 1**: Select the ONE BEST algorithm and justify your choice in detail. Consider:
- Effectiveness in **{{dim}}** expensive optimization
- Efficiency with a very limited **fixed** budget of **{{budget}}**
- Availability of implementation details in the paper
- Publication venue quality (prefer IEEE Trans / top conferences)

4. **CRITICAL - Structured Output**: At the very end of your response, output the following JSON block (this will be parsed programmatically). Use the EXACT paper title as it appears in the literature above:

```json
{
	"top1": [
	{
		"rank": 1,
		"algorithm_name": "<short algorithm name/abbreviation>",
		"paper_title": "<exact full paper title>",
		"venue": "<publication venue>",
		"year": <year>,
		"reason": "<one-sentence justification>"
	}
	]
}
```)TPL";

const char* const kGenStage1 =
    R"TPL(You are a highly skilled computer scientist in the field of expensive black-box optimization, Bayesian optimization, surrogate-assisted evolutionary computation, and modern metaheuristic algorithms. You stay current with the latest publications from top-tier venues. Your task is to faithfully implement optimization algorithms based on their original paper content.

You must implement the algorithm from the paper "{{paper_title}}" ({{venue}}, {{year}})

**Problem Setting:**
- Dimensionality: {{dim}}
- Function Evaluation Budget: {{budget}}
- Problem Type: {{desc}}
- Search space / bounds: {{search_space}}

--- FULL PAPER CONTENT ---

{{document_text}}

--- END OF PAPER ---

**Implementation Requirements:**

Based on the FULL PAPER CONTENT above, provide a HIGH-QUALITY, FEATURE-COMPLETE implementation:
- Read the paper carefully and implement ALL key components and mechanisms described
- Do NOT oversimplify by replacing sophisticated strategies with basic alternatives
- Follow the algorithm pseudocode and equations in the paper as closely as possible
- Aim for a production-quality implementation that faithfully represents the algorithm

Please:
1. First, briefly summarize the key algorithmic components you identified from the paper
2. Then provide the complete Python implementation following the code template below
3. For each key component (including formula, operator, parameter) that the paper emphasizes as critical or contributing to performance, add a trailing comment `# **IMPORTANT COMPONENT**` at the corresponding function or code block. This helps identify which parts are the paper's core contributions vs. standard boilerplate.

{{code_template}})TPL";

const char* const kCodeTemplate =
    R"TPL(```python
from collections.abc import Callable
import numpy as np
import torch
import gpytorch
# Import any additional libraries you need for your algorithm design

class <AlgorithmName>:
    def __init__(self, budget: int, dim: int):
        self.budget = budget
        self.dim = dim
        # bounds: shape (2, dim); bounds[0]=lower, bounds[1]=upper per coordinate (often heterogeneous / problem-dependent).
        self.bounds = np.array([[-5.0] * dim, [5.0] * dim])

        # Data storage for evaluated points (if needed)
        self.X: np.ndarray = None  # shape (n_points, n_dims) - stores evaluated points
        self.y: np.ndarray = None  # shape (n_points, 1) - stores evaluated values
        self.n_evals = 0  # Number of function evaluations

        # Algorithm-specific parameters
        # Define your strategy parameters here

        # GPU/Device configuration (REQUIRED if using torch/gpytorch)
        self.device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
        self.dtype = torch.float64  # or torch.float32 for faster computation

        # Do not add any other arguments without a default value

    def __call__(self, func: Callable[[np.ndarray], np.float64]) -> tuple[np.float64, np.array]:
        # Main optimization loop
        # func: takes array of shape (n_dims,) and returns np.float64
        # !!! CRITICAL: Monitor self.n_evals and ensure it never exceeds self.budget !!!
        # Return a tuple (best_y, best_x) where:
        #   - best_y: best objective value found (scalar)
        #   - best_x: best solution found (1D numpy array of shape (dim,))

        # Implement your algorithm here

        return best_y, best_x
```

**Code Requirements:**
- The code should contain an `__init__(self, budget, dim)` function and the function `__call__(self, func)`, which should *minimize* the expensive black-box function `func` using `self.budget` function evaluations.
- The func() can only be called as many times as the budget allows, not more.
- Use `self.bounds` with shape (2, dim) for per-coordinate lower/upper bounds; they are problem-dependent and may be heterogeneous (e.g., [1, 1e3], [0.01, 0.49], [10, 100] across variables). Do not hard-code a single global interval for all problems unless that is the evaluated protocol.
- You are allowed to use numpy, scipy, scikit-learn, torch, gpytorch libraries.
- Name the class based on the algorithm name or its characteristics.
- Keep the code structure and comments from the template.
- **GPU acceleration support is RECOMMENDED when using torch/gpytorch**. Use `torch.device("cuda" if torch.cuda.is_available() else "cpu")` to automatically detect and use GPU when available.)TPL";

const char* const kGenStage2 =
    R"TPL(You are a meticulous algorithm verification expert. Your job is to compare a Python implementation against its original paper and identify ALL discrepancies. You must fix every deviation from the paper's pseudocode, equations, and algorithm descriptions. Do NOT introduce your own knowledge - only follow what the paper explicitly states.

Below is a Python implementation of the algorithm "{{algo_name}}" from the paper "{{paper_title}}".

Your task: carefully compare this implementation against the ORIGINAL PAPER and fix ALL discrepancies.

--- FULL PAPER CONTENT (for reference) ---

{{document_text}}

--- END OF PAPER ---

--- CURRENT IMPLEMENTATION (Round 1 output) ---

```python
{{preliminary_code}}
```

--- END OF IMPLEMENTATION ---

**Review Checklist - go through each item and fix if needed:**

1. **Algorithm pseudocode**: Compare EVERY line of the paper's Algorithm/pseudocode with the code. Are all steps implemented? Is the order correct? Are any steps missing or extra?

2. **Equations**: Check EVERY numbered equation in the paper. Is each equation translated to code correctly?

3. **Parameters**: Are all algorithm parameters set to the values specified in the paper?

4. **Data flow**: After environmental selection or any selection step, are the selected individuals' associated data correctly tracked and assigned?

5. **Boundary handling**: Does the code handle boundary constraints the same way as described in the paper?

6. **Training sample selection**: How are training samples selected for the surrogate model? Does it match the paper?

**Output Requirements:**
- First, list ALL discrepancies you found (numbered list), with the specific paper reference (equation number, algorithm line, section) for each
- Then provide the COMPLETE corrected Python implementation (not just patches - the full code)
- The corrected code must follow the same class template structure (__init__ with budget/dim, __call__ with func)
- Keep the same class name: {{algo_name}}
- For each key component (including formula, operator, parameter) that the paper emphasizes as critical or contributing to performance, add a trailing comment `# **IMPORTANT COMPONENT**` at the corresponding function or code block. This helps identify which parts are the paper's core contributions vs. standard boilerplate.)TPL";

const char* const kReverse =
    R"TPL(Analyze the following optimization algorithm implementation and provide a concise technical description (3-5 sentences).
Focus on: (1) the algorithm's name and origin (paper/venue if identifiable from code comments), (2) its core strategy and key components, (3) what makes it suitable for {{desc}}.

Do NOT include any code. Output ONLY the description text, nothing else.

"""python
{{init_code}}
""")TPL";

const char* const kRefine =
    R"TPL({{task_prompt}}

**IMPORTANT Performance Warning:**
- Do NOT use `scipy.optimize.minimize` (e.g., L-BFGS-B) to optimize acquisition functions. It uses numerical gradients which are extremely slow.

Give it a concise but comprehensive key-word-style description with the main ideas and justify your decision about the algorithm design.

Study the high-performing algorithm carefully and **learn** the key problem-solving strategies, design patterns, and algorithmic ideas that make them effective.
Based on what you learn, design a **new** algorithm.

**IMPORTANT COMPONENT preservation:** In the parent code above, any line or block annotated with `# **IMPORTANT COMPONENT**` marks mechanisms the original paper emphasized as critical. **Change these as little as possible** when you design the new algorithm: keep the same ideas, structure, and behavior unless a minimal edit is strictly required for integration or correctness. Do not replace them with generic shortcuts. If you reuse or adapt such a block, retain the `# **IMPORTANT COMPONENT**` comment on the corresponding code.

##  {{algo_name}}
##  {{description}}

With code:
```python
"""
SOTA Algorithm for {{dim}} / {{budget}} Setting
Algorithm:  {{algo_name}}
Paper: {{paper_title}}
Venue: {{venue}}
Implementation source: Full paper PDF

Problem Setting:
- Dimensionality: {{dim}}
- Function Evaluation Budget: {{budget}}
- Problem Type: {{desc}}
- Search space / bounds: {{search_space}}
"""

{{init_code}}
```

A code structure guide is as follows and keep the comments from the guide when generating the code.

{{code_template}}

Give the response in the format:
# Analysis
<Analyze the specific difficulties of the {{dim}} / {{budget}} setting and how this impacts algorithm choice>
# Description
<description>
# Justification
<justification for the key components of the algorithm or the changes made>
# Code
<code>)TPL";

const char* const kJudge =
    R"TPL(You are a highly skilled computer scientist in the field of expensive black-box optimization, Bayesian optimization, surrogate-assisted evolutionary computation, and modern metaheuristic algorithms.

Your task is to rigorously evaluate and compare two optimization algorithm implementations (Algorithm A and Algorithm B) designed to solve {{desc}} problems.

### The Problem Context
The algorithms must minimize expensive black-box objectives with a search space of {{search_space}}. **The target regime is {{dim}} with a strict budget of {{budget}} per run**. Implementations must be in Python, using libraries like numpy, scipy, scikit-learn, torch, or gpytorch.

### Evaluation Criteria

1.  **Algorithm Design & Strategy:**
-   Does the algorithm use an appropriate optimization strategy given **very scarce data** ({{budget}}) and **dimensionality ({{dim}})**?
-   How efficiently does the algorithm use the limited **{{budget}} function evaluations**?

2.  **Exploration-Exploitation Balance:**
-   How does the algorithm select candidates for evaluation?
-   Does the design effectively balance exploration and exploitation?

3.  **Implementation Correctness:**
-   Does the code strictly respect the **{{budget}}** limit?
-   Is the code logic sound? Are there shape mismatches, data leakage, or initialization errors?

4.  **Robustness:**
-   Is the design appropriate for the **{{dim}} / {{budget}}** expensive setting?

### Judgment Logic

1.  **Focus on Design Quality:** Evaluate solely the algorithm's optimization quality and design soundness. Do not consider computational speed or execution time.

2.  **Anti-bias:** Do not treat longer code, more complex class names, or stacking more modules as stronger evidence of a better algorithm.

### Output Requirement

Return a JSON object (no markdown code blocks):
{
	"analysis": "A detailed technical analysis comparing Algorithm A and B, discussing their optimization strategies, sample efficiency, and suitability for the {{dim}} / {{budget}} expensive setting.",
	"winner": "Algorithm A" or "Algorithm B"
}
{{code_a}}
{{code_b}})TPL";

} // namespace autosg::prompt_texts
