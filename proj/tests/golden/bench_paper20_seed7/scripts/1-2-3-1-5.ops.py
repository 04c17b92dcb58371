import json
import sys

from openseespy.opensees import *

wipe()
model('basic', '-ndm', 2, '-ndf', 3)

# nodes and supports
node(1, 0.0, 0.0)
node(2, 6.0, 0.0)
node(3, 0.0, 2.0)
node(4, 6.0, 2.0)
node(5, 12.0, 0.0)
node(6, 12.0, 2.0)
node(7, 6.0, 3.0)
node(8, 12.0, 3.0)
node(9, 18.0, 0.0)
node(10, 18.0, 2.0)
node(11, 18.0, 3.0)
node(12, 12.0, 7.0)
node(13, 18.0, 7.0)
node(14, 24.0, 0.0)
node(15, 24.0, 2.0)
node(16, 30.0, 0.0)
node(17, 30.0, 2.0)
node(18, 24.0, 3.0)
node(19, 30.0, 3.0)
node(20, 24.0, 7.0)
node(21, 30.0, 7.0)
node(22, 24.0, 12.0)
node(23, 30.0, 12.0)
node(24, 24.0, 15.0)
node(25, 30.0, 15.0)
fix(1, 1, 1, 1)
fix(2, 1, 1, 1)
fix(5, 1, 1, 1)
fix(9, 1, 1, 1)
fix(14, 1, 1, 1)
fix(16, 1, 1, 1)
# transformation
geomTransf('Linear', 1)
# elements
element('elasticBeamColumn', 1, 1, 3, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 2, 2, 4, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 3, 3, 4, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 4, 5, 6, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 5, 4, 6, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 6, 4, 7, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 7, 6, 8, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 8, 7, 8, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 9, 9, 10, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 10, 6, 10, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 11, 10, 11, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 12, 8, 11, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 13, 8, 12, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 14, 11, 13, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 15, 12, 13, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 16, 14, 15, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 17, 10, 15, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 18, 16, 17, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 19, 15, 17, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 20, 15, 18, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 21, 17, 19, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 22, 18, 19, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 23, 18, 20, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 24, 19, 21, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 25, 20, 21, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 26, 20, 22, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 27, 21, 23, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 28, 22, 23, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 29, 22, 24, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 30, 23, 25, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 31, 24, 25, 0.015, 2e+08, 0.00015, 1)

# loads
timeSeries('Linear', 1)
pattern('Plain', 1, 1)
load(3, 50.0, 0.0, 0.0)
eleLoad('-ele', 3, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 5, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 8, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 10, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 12, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 15, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 17, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 19, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 22, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 25, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 28, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 31, '-type', '-beamUniform', -10.0)

# analysis
system('BandGeneral')
numberer('RCM')
constraints('Plain')
integrator('LoadControl', 1.0)
algorithm('Linear')
analysis('Static')
ok = analyze(1)
if ok != 0:
    raise SystemExit('analysis failed with code %d' % ok)

# results
FIXED_NODES = [1, 2, 5, 9, 14, 16]
reactions()
out = {'displacements': [], 'reactions': [], 'member_end_forces': []}
for tag in sorted(getNodeTags()):
    ux, uy, rz = nodeDisp(tag)[:3]
    out['displacements'].append({'node': tag, 'ux': ux, 'uy': uy, 'rz': rz})
for tag in FIXED_NODES:
    rx, ry, mz = nodeReaction(tag)[:3]
    out['reactions'].append({'node': tag, 'Rx': rx, 'Ry': ry, 'Mz': mz})
for tag in sorted(getEleTags()):
    f = eleResponse(tag, 'localForce')
    out['member_end_forces'].append({'element': tag, 'N_i': f[0], 'V_i': f[1], 'M_i': f[2],
                                     'N_j': f[3], 'V_j': f[4], 'M_j': f[5]})
with open(sys.argv[1] if len(sys.argv) > 1 else 'result.json', 'w') as fh:
    json.dump(out, fh)
