import json

import pytest

RANKS_WITH = """rank,surface,kind,frequency,probability
1,#com,comma,580,0.058
2,#dot,dot,420,0.042
3,the,word,300,0.03
4,of,word,220,0.022
5,and,word,180,0.018
6,#qu,question,120,0.012
7,to,word,100,0.01
8,a,word,90,0.009
9,#col,colon,60,0.006
10,in,word,50,0.005
11,he,word,30,0.003
12,was,word,20,0.002
13,it,word,12,0.0012
14,that,word,8,0.0008
15,she,word,5,0.0005
"""

RANKS_WITHOUT = """rank,surface,kind,frequency,probability
1,the,word,300,0.0361
2,of,word,220,0.0265
3,and,word,180,0.0217
4,to,word,100,0.012
5,a,word,90,0.0108
6,in,word,50,0.006
7,he,word,30,0.0036
8,was,word,20,0.0024
9,it,word,12,0.0014
10,that,word,8,0.00096
11,she,word,5,0.0006
12,her,word,3,0.00036
"""

FIT_WITH = {"alpha": 1.02, "c": 1.4, "amplitude": 0.08, "r_min": 1, "r_max": 15,
            "rss": 0.02, "boundary": False, "label": "demo"}
FIT_WITHOUT = {"alpha": 1.05, "c": 6.2, "amplitude": 0.21, "r_min": 1, "r_max": 12,
               "rss": 0.03, "boundary": False, "label": "demo"}
FIT_POWER = {"alpha": 1.0, "c": 0.0, "amplitude": 0.06, "r_min": 10, "r_max": 15,
             "rss": 0.01, "boundary": False, "label": "demo"}

SCATTER = """surface,count,aspl_mean,aspl_stderr,lcc_mean,lcc_stderr,null_count,aspl_null_mean,aspl_null_stderr,lcc_null_mean,lcc_null_stderr,aspl_ratio,lcc_ratio
#com,20,1.99,0.01,0.007,0.0005,20,1.97,0.01,0.009,0.0004,1.01,0.78
#fs,20,2.03,0.01,0.008,0.0005,20,2.01,0.011,0.01,0.0005,1.01,0.8
the,20,2.18,0.012,0.025,0.001,20,2.2,0.012,0.024,0.001,0.99,1.04
of,20,2.21,0.012,0.029,0.001,20,2.22,0.013,0.028,0.001,0.995,1.03
and,20,2.22,0.013,0.032,0.0012,20,2.25,0.013,0.03,0.0011,0.99,1.07
to,20,2.25,0.013,0.034,0.0012,20,2.26,0.014,0.034,0.0012,0.996,0.99
a,20,2.27,0.014,0.04,0.0013,20,2.29,0.014,0.037,0.0013,0.99,1.08
in,20,2.29,0.014,0.04,0.0014,20,2.3,0.015,0.04,0.0013,0.994,1.01
time,18,2.62,0.03,0.11,0.004,19,2.7,0.03,0.1,0.004,0.97,1.1
home,17,2.8,0.04,0.16,0.006,18,2.9,0.04,0.14,0.005,0.965,1.14
"""

REMOVAL = """rank,surface,n,e,aspl,aspl_over_log_n,clustering,assortativity,aspl_null,clustering_null,assortativity_null,aspl_ratio,clustering_ratio,assortativity_ratio,disconnected
0,,6306,42228,2.7478,0.3140,0.3581,-0.1983,2.7716,0.3497,-0.2021,0.9914,1.0238,0.9814,0
1,#com,6305,40002,2.8577,0.3266,0.3013,-0.1913,2.8628,0.2925,-0.1963,0.9982,1.0299,0.9744,1
2,#fs,6305,40214,2.8341,0.3239,0.3105,-0.1815,2.8475,0.3016,-0.1879,0.9953,1.0296,0.9660,0
3,the,6305,41100,2.7612,0.3156,0.3502,-0.1922,2.7845,0.3411,-0.1987,0.9916,1.0266,0.9672,0
4,of,6305,41342,2.7598,0.3154,0.3523,-0.1941,2.7833,0.3437,-0.1998,0.9916,1.0250,0.9715,0
5,and,6305,41398,2.7613,0.3156,0.3531,-0.1950,2.7811,0.3445,-0.2003,0.9929,1.0249,0.9735,0
"""


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("figure_data")
    (root / "ranks_with.csv").write_text(RANKS_WITH, encoding="utf-8")
    (root / "ranks_without.csv").write_text(RANKS_WITHOUT, encoding="utf-8")
    (root / "scatter.csv").write_text(SCATTER, encoding="utf-8")
    (root / "removal.csv").write_text(REMOVAL, encoding="utf-8")
    (root / "fit_with.json").write_text(json.dumps(FIT_WITH), encoding="utf-8")
    (root / "fit_without.json").write_text(json.dumps(FIT_WITHOUT), encoding="utf-8")
    (root / "fit_power.json").write_text(json.dumps(FIT_POWER), encoding="utf-8")
    return root
