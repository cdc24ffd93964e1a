from sklearn.ensemble import RandomForestClassifier
from sklearn.svm import SVC

clf = RandomForestClassifier()  # expect: SK06
svm = SVC()  # expect: SK06
